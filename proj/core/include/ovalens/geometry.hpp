#pragma once

#include <cmath>

namespace ovalens {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// A position in the plane; same representation as Vec2.
using Point2 = Vec2;

constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator-(Vec2 v) { return {-v.x, -v.y}; }
constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
constexpr Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }
constexpr Vec2 operator/(Vec2 v, double s) { return {v.x / s, v.y / s}; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// Scalar 2D cross product: a.x*b.y - a.y*b.x.
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

inline double norm_sq(Vec2 v) { return dot(v, v); }
inline double norm(Vec2 v) { return std::sqrt(dot(v, v)); }
inline Vec2 normalized(Vec2 v) { return v / norm(v); }

/// Counterclockwise quarter turn.
constexpr Vec2 rot90(Vec2 v) { return {-v.y, v.x}; }

inline double distance(Point2 a, Point2 b) { return norm(a - b); }

/// Unsigned angle between two vectors, in [0, pi].
inline double angle_between(Vec2 a, Vec2 b) {
    return std::atan2(std::fabs(cross(a, b)), dot(a, b));
}

struct Ray2 {
    Point2 origin;
    Vec2 direction;  // unit
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

using Point3 = Vec3;

constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
constexpr Vec3 operator-(Vec3 v) { return {-v.x, -v.y, -v.z}; }
constexpr Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
constexpr Vec3 operator/(Vec3 v, double s) { return {v.x / s, v.y / s, v.z / s}; }

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// det[a; b; c] as the scalar triple product a . (b x c).
constexpr double triple(Vec3 a, Vec3 b, Vec3 c) { return dot(a, cross(b, c)); }

inline double norm_sq(Vec3 v) { return dot(v, v); }
inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }
inline Vec3 normalized(Vec3 v) { return v / norm(v); }

inline double angle_between(Vec3 a, Vec3 b) {
    return std::atan2(norm(cross(a, b)), dot(a, b));
}

}  // namespace ovalens
