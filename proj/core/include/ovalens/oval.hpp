#pragma once

#include <optional>
#include <vector>

#include "ovalens/geometry.hpp"

namespace ovalens {

/// Bipolar curve d1 + n*d2 = c with foci F = (0,0) and F' = (b,0).
///
/// d1 and d2 are the distances from a curve point to F and F'. The locus is
/// nonempty iff c >= min(b, n*b): the weighted sum restricted to the focal
/// segment is linear in x with endpoint values n*b (at F) and b (at F'), and
/// its global minimum over the plane is attained there.
struct CartesianOval {
    double b = 1.0;  // focal separation, >= 0
    double n = 1.5;  // refraction-index ratio, > 0
    double c = 2.0;  // weighted path constant, > 0
};

inline Point2 focus_near(const CartesianOval&) { return {0.0, 0.0}; }
inline Point2 focus_far(const CartesianOval& oval) { return {oval.b, 0.0}; }

/// Returns the oval unchanged if its parameters describe a nondegenerate
/// curve; throws InvalidParameter, EmptyLocus, or DegenerateLocus otherwise.
CartesianOval validate(const CartesianOval& oval);

/// d1 + n*d2 - c; zero exactly on the curve.
double bipolar_residual(Point2 p, const CartesianOval& oval);

/// LHS - RHS of the rationalized quartic form
/// [(1-n^2)(x^2+y^2) + 2 n^2 b x + c^2 - n^2 b^2]^2 - 4 c^2 (x^2+y^2).
/// Vanishes on every sign branch of +-d1 +- n*d2 = +-c, not only on the
/// bipolar branch above.
double quartic_residual(Point2 p, const CartesianOval& oval);

/// Unit normal at a curve point: normalize(u1 + n*u2) with u1, u2 the unit
/// vectors from the foci to p. Points toward increasing d1 + n*d2.
/// Throws AtFocus at either focus and OffCurve if |bipolar_residual| exceeds
/// on_curve_tol.
Vec2 normal_at(Point2 p, const CartesianOval& oval, double on_curve_tol = 1e-10);

/// A curve point with its analytic unit normal and polar angle about F.
struct OvalSample {
    Point2 point;
    Vec2 normal;
    double psi = 0.0;
};

/// Solves r + n*sqrt(r^2 - 2 b r cos(psi) + b^2) = c for the smallest r > 0,
/// i.e. the radial coordinate about F of the near branch at polar angle psi.
/// Returns nullopt when the ray at psi does not meet the curve.
std::optional<double> solve_radius(const CartesianOval& oval, double psi);

/// dr/dpsi of the radial parametrization at a solved (psi, r) pair.
double radius_slope(const CartesianOval& oval, double psi, double r);

/// Samples the curve on a uniform psi grid over [-pi, pi); angles with no
/// solution are omitted, so the result may hold fewer than count samples.
/// Ordered by psi. Requires a validated nondegenerate oval and count >= 2.
std::vector<OvalSample> sample_curve(const CartesianOval& oval, int count);

}  // namespace ovalens
