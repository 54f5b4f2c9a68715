#include "ovalens/revolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ovalens/error.hpp"

namespace ovalens {

namespace {

constexpr double kAxisEps = 1e-12;

struct Profile2D {
    double value;
    Vec2 gradient;
};

double profile_value(const ProfileCurve& profile, Point2 p) {
    if (const auto* oval = std::get_if<CartesianOval>(&profile)) return bipolar_residual(p, *oval);
    return conic_residual(std::get<ConicSpec>(profile), p);
}

Profile2D profile_eval(const ProfileCurve& profile, Point2 p) {
    if (const auto* oval = std::get_if<CartesianOval>(&profile)) {
        const double d1 = norm(p);
        const double d2 = distance(p, focus_far(*oval));
        if (d1 < 1e-14 || d2 < 1e-14)
            throw Error(ErrorKind::ZeroGradient, "profile gradient undefined at a focus");
        return {d1 + oval->n * d2 - oval->c, p / d1 + oval->n * ((p - focus_far(*oval)) / d2)};
    }
    const auto& conic = std::get<ConicSpec>(profile);
    switch (conic.kind) {
        case ConicKind::Ellipse:
        case ConicKind::Hyperbola: {
            const double dx = p.x - conic.center_x;
            return {conic_residual(conic, p),
                    {2.0 * dx / conic.semi_axis_sq_x, 2.0 * p.y / conic.semi_axis_sq_y}};
        }
        case ConicKind::Parabola:
            return {conic_residual(conic, p), {-conic.parabola_4b, 2.0 * p.y}};
        case ConicKind::VerticalLine:
            return {conic_residual(conic, p), {1.0, 0.0}};
        case ConicKind::Segment:
            break;
    }
    throw Error(ErrorKind::InvalidParameter, "segment profile cannot be revolved");
}

void require_x_axis(const AxisLine& axis) {
    if (norm(axis.anchor) > kAxisEps || std::fabs(axis.direction.y) > kAxisEps ||
        std::fabs(axis.direction.z) > kAxisEps)
        throw Error(ErrorKind::InvalidParameter, "requires the x-axis through the origin");
}

}  // namespace

AxisLine make_axis(Point3 anchor, Vec3 direction) {
    const double len = norm(direction);
    if (len < 1e-14) throw Error(ErrorKind::InvalidParameter, "axis direction must be nonzero");
    return {anchor, direction / len};
}

ScalarField3 make_field(std::function<double(Point3)> value) {
    const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
    auto grad = [value, h0](Point3 p) {
        const double hx = h0 * std::max(1.0, std::fabs(p.x));
        const double hy = h0 * std::max(1.0, std::fabs(p.y));
        const double hz = h0 * std::max(1.0, std::fabs(p.z));
        return Vec3{(value({p.x + hx, p.y, p.z}) - value({p.x - hx, p.y, p.z})) / (2.0 * hx),
                    (value({p.x, p.y + hy, p.z}) - value({p.x, p.y - hy, p.z})) / (2.0 * hy),
                    (value({p.x, p.y, p.z + hz}) - value({p.x, p.y, p.z - hz})) / (2.0 * hz)};
    };
    return {std::move(value), std::move(grad)};
}

ScalarField3 revolved_field(const RevolvedSurface& surf) {
    const ProfileCurve profile = surf.profile;
    auto value = [profile](Point3 p) {
        return profile_value(profile, {p.x, std::sqrt(p.y * p.y + p.z * p.z)});
    };
    auto grad = [profile](Point3 p) {
        const double rho = std::sqrt(p.y * p.y + p.z * p.z);
        if (rho < kAxisEps)
            throw Error(ErrorKind::OnAxis, "revolved gradient undefined on the axis");
        const Profile2D e = profile_eval(profile, {p.x, rho});
        return Vec3{e.gradient.x, e.gradient.y * p.y / rho, e.gradient.y * p.z / rho};
    };
    return {std::move(value), std::move(grad)};
}

ScalarField3 perturbed_revolved_field(const CartesianOval& oval, double eps, int k) {
    auto value = [oval, eps, k](Point3 p) {
        const double rho = std::sqrt(p.y * p.y + p.z * p.z);
        const double theta = std::atan2(p.z, p.y);
        const double bump = 1.0 + eps * std::cos(k * theta);
        return bipolar_residual({p.x, rho / bump}, oval);
    };
    return make_field(std::move(value));
}

Point3 revolve_point(Point2 p, double theta) {
    return {p.x, p.y * std::cos(theta), p.y * std::sin(theta)};
}

Vec3 surface_normal(Point3 p, const RevolvedSurface& surf, double on_surface_tol) {
    const double rho = std::sqrt(p.y * p.y + p.z * p.z);
    const Profile2D e = profile_eval(surf.profile, {p.x, rho});
    if (std::fabs(e.value) > on_surface_tol)
        throw Error(ErrorKind::OffSurface, "implicit residual exceeds tolerance");
    const Vec2 n2 = normalized(e.gradient);
    if (rho < kAxisEps) {
        // An axis vertex has a well-defined axial normal; anything else on
        // the axis has no single normal direction.
        if (std::fabs(n2.y) > 1e-9)
            throw Error(ErrorKind::OnAxis, "normal direction ambiguous on the axis");
        return {n2.x, 0.0, 0.0};
    }
    return {n2.x, n2.y * p.y / rho, n2.y * p.z / rho};
}

double coplanarity_residual(Point3 p, Vec3 normal, Point3 f, Point3 f2) {
    const double d1 = norm(p - f);
    const double d2 = norm(p - f2);
    if (d1 < 1e-14 || d2 < 1e-14)
        throw Error(ErrorKind::CoincidentPoint, "point coincides with a focus");
    return triple(normal, p - f, p - f2) / (d1 * d2);
}

double revolution_det(const ScalarField3& field, const AxisLine& axis, Point3 p) {
    const Vec3 g = field.gradient(p);
    if (norm(g) < 1e-13)
        throw Error(ErrorKind::ZeroGradient, "field gradient vanishes at the sample");
    return triple(g, axis.direction, p - axis.anchor);
}

double dependence_check(const ScalarField3& field, const AxisLine& axis, int samples,
                        unsigned seed) {
    require_x_axis(axis);
    if (samples < 1) throw Error(ErrorKind::InvalidParameter, "sample count must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-2.0, 2.5);
    std::uniform_real_distribution<double> urho(0.05, 1.6);
    std::uniform_real_distribution<double> uangle(0.0, 2.0 * std::acos(-1.0));
    std::uniform_int_distribution<int> ucase(0, 3);

    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = ux(rng);
        const double rho = urho(rng);
        const double a1 = uangle(rng);
        const double y = rho * std::cos(a1);
        const double z = rho * std::sin(a1);
        Point3 partner;
        switch (ucase(rng)) {
            // Swap/flip partners preserve y^2 + z^2 bit-exactly; the rotated
            // partner exercises arbitrary azimuths at roundoff-level radius
            // mismatch.
            case 0: partner = {x, z, y}; break;
            case 1: partner = {x, -y, z}; break;
            case 2: partner = {x, -z, -y}; break;
            default: {
                const double a2 = uangle(rng);
                partner = {x, rho * std::cos(a2), rho * std::sin(a2)};
                break;
            }
        }
        worst = std::max(worst, std::fabs(field.value({x, y, z}) - field.value(partner)));
    }
    return worst;
}

int jacobian_pair_rank(const AxisLine& axis, Point3 p) {
    const Vec3 d = axis.direction;
    const Vec3 r = p - axis.anchor;
    // The three 2x2 Jacobians of (axial form, squared distance) are twice the
    // components of d x r.
    const double j_xy = 2.0 * (d.x * r.y - d.y * r.x);
    const double j_yz = 2.0 * (d.y * r.z - d.z * r.y);
    const double j_xz = 2.0 * (d.x * r.z - d.z * r.x);
    const int count = (std::fabs(j_xy) > kAxisEps) + (std::fabs(j_yz) > kAxisEps) +
                      (std::fabs(j_xz) > kAxisEps);
    if (count == 0)
        throw Error(ErrorKind::OnAxis, "all three Jacobians vanish: point lies on the axis");
    return count;
}

double normal_axis_intersection(Point3 p, Vec3 normal, const AxisLine& axis) {
    const Vec3 cr = cross(normal, axis.direction);
    const double cn = norm(cr);
    if (cn < 1e-12)
        throw Error(ErrorKind::ParallelToAxis, "normal is parallel to the axis");
    return std::fabs(dot(p - axis.anchor, cr)) / cn;
}

std::vector<SurfaceSample> sample_revolved_oval(const CartesianOval& oval, int psi_count,
                                                int theta_count) {
    if (psi_count < 2 || theta_count < 1)
        throw Error(ErrorKind::InvalidParameter, "needs psi_count >= 2 and theta_count >= 1");
    const RevolvedSurface surf{oval};
    const double two_pi = 2.0 * std::acos(-1.0);
    std::vector<SurfaceSample> out;
    for (const OvalSample& s : sample_curve(oval, psi_count)) {
        if (!(s.point.y > 1e-9)) continue;  // one meridian half suffices
        for (int j = 0; j < theta_count; ++j) {
            // Offset keeps samples off the coordinate planes.
            const double theta = two_pi * (static_cast<double>(j) + 0.37) / theta_count;
            const Point3 p = revolve_point(s.point, theta);
            out.push_back({p, surface_normal(p, surf)});
        }
    }
    return out;
}

std::vector<SurfaceSample> sample_perturbed_ovoid(const CartesianOval& oval, double eps, int k,
                                                  int psi_count, int theta_count) {
    if (psi_count < 2 || theta_count < 1)
        throw Error(ErrorKind::InvalidParameter, "needs psi_count >= 2 and theta_count >= 1");
    const ScalarField3 field = perturbed_revolved_field(oval, eps, k);
    const double two_pi = 2.0 * std::acos(-1.0);
    std::vector<SurfaceSample> out;
    for (const OvalSample& s : sample_curve(oval, psi_count)) {
        if (!(s.point.y > 1e-9)) continue;
        for (int j = 0; j < theta_count; ++j) {
            const double theta = two_pi * (static_cast<double>(j) + 0.37) / theta_count;
            const double radius = s.point.y * (1.0 + eps * std::cos(k * theta));
            const Point3 p{s.point.x, radius * std::cos(theta), radius * std::sin(theta)};
            out.push_back({p, normalized(field.gradient(p))});
        }
    }
    return out;
}

}  // namespace ovalens
