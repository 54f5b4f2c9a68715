#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "ovalens/conic.hpp"
#include "ovalens/geometry.hpp"
#include "ovalens/oval.hpp"

namespace ovalens {

/// Line anchor + unit direction.
struct AxisLine {
    Point3 anchor;
    Vec3 direction;
};

/// Normalizes the direction; throws InvalidParameter on a zero vector.
AxisLine make_axis(Point3 anchor, Vec3 direction);

inline AxisLine x_axis() { return {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}; }

using ProfileCurve = std::variant<CartesianOval, ConicSpec>;

/// Profile revolved about the x-axis through the origin (the profile's foci
/// live on it). The implicit function is the profile residual evaluated at
/// (x, sqrt(y^2 + z^2)).
struct RevolvedSurface {
    ProfileCurve profile;
};

/// Continuously differentiable scalar field with a gradient evaluator.
/// Both callables must be safe for concurrent invocation.
struct ScalarField3 {
    std::function<double(Point3)> value;
    std::function<Vec3(Point3)> gradient;
};

/// Wraps a value function with a central finite-difference gradient,
/// step h = cbrt(machine epsilon) scaled by coordinate magnitude.
ScalarField3 make_field(std::function<double(Point3)> value);

/// Field of a revolved profile with its analytic gradient (singular on the
/// axis, where the radial direction is undefined).
ScalarField3 revolved_field(const RevolvedSurface& surf);

/// Revolved bipolar curve whose revolution radius is modulated by
/// (1 + eps*cos(k*theta)); gradient by finite differences. Not a surface of
/// revolution for eps != 0 -- used to show the certificates discriminate.
ScalarField3 perturbed_revolved_field(const CartesianOval& oval, double eps, int k);

/// (p.x, p.y cos(theta), p.y sin(theta)) -- revolution about the x-axis.
Point3 revolve_point(Point2 p, double theta);

/// Unit outward normal of the revolved surface at an off-axis surface point:
/// the profile's analytic 2D normal rotated by the point's azimuth; equals
/// the normalized gradient of the revolved implicit function.
/// Throws OnAxis near the axis and OffSurface off the zero set.
Vec3 surface_normal(Point3 p, const RevolvedSurface& surf, double on_surface_tol = 1e-10);

/// Scalar triple product det[normal; p - f; p - f2] normalized by
/// |p - f| |p - f2|; zero iff the normal lies in the plane of the two focal
/// rays. Throws CoincidentPoint when p equals a focus.
double coplanarity_residual(Point3 p, Vec3 normal, Point3 f, Point3 f2);

/// det of the 3x3 matrix with rows [grad F(p); axis direction; p - anchor].
/// Vanishes identically on a surface of revolution about the axis.
/// Throws ZeroGradient when |grad F(p)| is negligible.
double revolution_det(const ScalarField3& field, const AxisLine& axis, Point3 p);

/// Draws sample pairs (P, P') with equal axial coordinate and equal squared
/// distance to the axis and returns max |field(P) - field(P')|. Near zero
/// certifies that the field depends only on (x, y^2 + z^2). The axis must be
/// the x-axis through the origin.
double dependence_check(const ScalarField3& field, const AxisLine& axis, int samples,
                        unsigned seed = 0);

/// Number of the three 2x2 Jacobians of (u, v) = (axial linear form, squared
/// distance to anchor) with respect to coordinate pairs exceeding 1e-12 in
/// magnitude. All three vanish exactly on the axis (throws OnAxis there).
int jacobian_pair_rank(const AxisLine& axis, Point3 p);

/// Minimal distance between the normal line {p + s*normal} and the axis;
/// zero certifies that the normal meets the axis of revolution.
/// Throws ParallelToAxis when the two lines are parallel.
double normal_axis_intersection(Point3 p, Vec3 normal, const AxisLine& axis);

struct SurfaceSample {
    Point3 point;
    Vec3 normal;
};

/// Deterministic off-axis sample grid of a revolved oval: profile samples
/// crossed with azimuths offset away from the coordinate planes.
std::vector<SurfaceSample> sample_revolved_oval(const CartesianOval& oval, int psi_count,
                                                int theta_count);

/// Samples of the radius-modulated surface matching perturbed_revolved_field;
/// normals from the field's finite-difference gradient.
std::vector<SurfaceSample> sample_perturbed_ovoid(const CartesianOval& oval, double eps,
                                                  int k, int psi_count, int theta_count);

}  // namespace ovalens
