#pragma once

#include <utility>

#include "ovalens/geometry.hpp"
#include "ovalens/oval.hpp"

namespace ovalens {

struct SineAnglePair {
    double sin_theta1 = 0.0;  // in [0, 1]
    double sin_theta2 = 0.0;  // in [0, 1]
};

/// Sines of the angles the focal rays f->p and f2->p make with the normal,
/// computed as absolute 2D cross products (never via arcsin of coordinates).
SineAnglePair sines_about_normal(Point2 p, Vec2 normal, Point2 f, Point2 f2);

/// sin_theta1 / sin_theta2 at an off-axis curve sample, using F = (0,0),
/// F' = (b,0) and the sample's normal. Constant and equal to oval.n along
/// the whole curve. Throws AxialDegeneracy when sin_theta2 < 1e-14.
double snell_ratio(const OvalSample& sample, const CartesianOval& oval);

/// Cross-validates the two classical expressions for (sin(theta1+phi),
/// sin(theta2+phi)) at a first-quadrant point with y > 0:
///   (i)  from the measured angles theta1, theta2 about the outward normal
///        and the tangent inclination phi = atan(tangent_slope);
///   (ii) as (x/l1, (b-x)/l2).
/// Returns route (i); throws DisagreementBeyondTolerance if the two routes
/// differ by more than agree_tol.
std::pair<double, double> fundamental_sines(Point2 p, const CartesianOval& oval,
                                            double tangent_slope,
                                            double agree_tol = 1e-8);

/// 2D vector form of Snell's law. The incident direction points into the
/// surface; the normal may face either side (it is re-oriented internally to
/// oppose the incident ray). The transmitted sine is sin(theta_i) / ratio.
/// Throws InvalidRatio for ratio <= 0 and TotalInternalReflection when the
/// required transmitted sine exceeds 1.
Vec2 refract_direction(Vec2 incident, Vec2 normal, double ratio);

}  // namespace ovalens
