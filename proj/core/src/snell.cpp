#include "ovalens/snell.hpp"

#include <cmath>

#include "ovalens/error.hpp"

namespace ovalens {

SineAnglePair sines_about_normal(Point2 p, Vec2 normal, Point2 f, Point2 f2) {
    const double d1 = distance(p, f);
    const double d2 = distance(p, f2);
    if (d1 < 1e-14 || d2 < 1e-14)
        throw Error(ErrorKind::CoincidentPoint, "point coincides with a focus");
    const Vec2 u1 = (p - f) / d1;
    const Vec2 u2 = (p - f2) / d2;
    return {std::fabs(cross(u1, normal)), std::fabs(cross(u2, normal))};
}

double snell_ratio(const OvalSample& sample, const CartesianOval& oval) {
    const SineAnglePair sines =
        sines_about_normal(sample.point, sample.normal, focus_near(oval), focus_far(oval));
    if (sines.sin_theta2 < 1e-14)
        throw Error(ErrorKind::AxialDegeneracy, "both angles vanish on the axis");
    return sines.sin_theta1 / sines.sin_theta2;
}

std::pair<double, double> fundamental_sines(Point2 p, const CartesianOval& oval,
                                            double tangent_slope, double agree_tol) {
    if (!(p.y > 0.0) || p.x < 0.0)
        throw Error(ErrorKind::InvalidParameter, "requires the first-quadrant configuration (y > 0)");
    const Vec2 outward = normal_at(p, oval);
    const double l1 = norm(p);
    const double l2 = distance(p, focus_far(oval));
    const Vec2 u1 = p / l1;
    const Vec2 u2 = (p - focus_far(oval)) / l2;

    // theta1 is measured from the outward half of the normal, theta2 from the
    // inward half; phi is the tangent inclination.
    const double theta1 = angle_between(outward, -u1);
    const double theta2 = angle_between(-outward, -u2);
    const double phi = std::atan(tangent_slope);
    const double s1 = std::sin(theta1 + phi);
    const double s2 = std::sin(theta2 + phi);

    const double s1_direct = p.x / l1;
    const double s2_direct = (oval.b - p.x) / l2;
    if (std::fabs(s1 - s1_direct) > agree_tol || std::fabs(s2 - s2_direct) > agree_tol)
        throw Error(ErrorKind::DisagreementBeyondTolerance,
                    "angle-decomposition and direct sine formulas disagree");
    return {s1, s2};
}

Vec2 refract_direction(Vec2 incident, Vec2 normal, double ratio) {
    if (!(ratio > 0.0) || !std::isfinite(ratio))
        throw Error(ErrorKind::InvalidRatio, "ratio must be finite and > 0");
    const Vec2 d = normalized(incident);
    Vec2 nh = normalized(normal);
    if (dot(d, nh) > 0.0) nh = -nh;  // face the incident side

    const double cos_i = -dot(d, nh);
    const double sin_i = std::fabs(cross(d, nh));
    const double sin_t = sin_i / ratio;
    if (sin_t > 1.0)
        throw Error(ErrorKind::TotalInternalReflection, "transmitted sine exceeds 1");
    const double cos_t = std::sqrt(std::max(0.0, 1.0 - sin_t * sin_t));
    const double inv = 1.0 / ratio;
    return inv * d + (inv * cos_i - cos_t) * nh;
}

}  // namespace ovalens
