#include "ovalens/oval.hpp"

#include <algorithm>
#include <cmath>

#include "ovalens/error.hpp"

namespace ovalens {

namespace {

constexpr double kFocusEps = 1e-14;

// r + n*sqrt(r^2 - 2 b r cos(psi) + b^2) - c, the bipolar residual along the
// polar ray at angle psi about F.
double radial_residual(const CartesianOval& oval, double cos_psi, double r) {
    const double d2 = std::sqrt(std::max(0.0, r * r - 2.0 * oval.b * r * cos_psi + oval.b * oval.b));
    return r + oval.n * d2 - oval.c;
}

double radial_residual_deriv(const CartesianOval& oval, double cos_psi, double r) {
    const double d2 = std::sqrt(std::max(0.0, r * r - 2.0 * oval.b * r * cos_psi + oval.b * oval.b));
    if (d2 < kFocusEps) return 1.0 + oval.n;  // limit direction along the ray through F'
    return 1.0 + oval.n * (r - oval.b * cos_psi) / d2;
}

// Bisection-safeguarded Newton for radial_residual on a sign-changing bracket.
double polish_radial_root(const CartesianOval& oval, double cos_psi, double lo, double hi) {
    double flo = radial_residual(oval, cos_psi, lo);
    double fhi = radial_residual(oval, cos_psi, hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) throw Error(ErrorKind::SolverFailure, "radial bracket lost its sign change");

    const double f_tol = 1e-14 * std::max(1.0, oval.c);
    double r = 0.5 * (lo + hi);
    for (int iter = 0; iter < 100; ++iter) {
        const double f = radial_residual(oval, cos_psi, r);
        if (std::fabs(f) < f_tol) return r;
        if ((f < 0.0) == (flo < 0.0)) {
            lo = r;
            flo = f;
        } else {
            hi = r;
            fhi = f;
        }
        const double df = radial_residual_deriv(oval, cos_psi, r);
        double next = (df != 0.0) ? r - f / df : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (hi - lo < 1e-16 * std::max(1.0, hi)) return 0.5 * (lo + hi);
        r = next;
    }
    r = 0.5 * (lo + hi);
    if (std::fabs(radial_residual(oval, cos_psi, r)) > 1e-10 * std::max(1.0, oval.c))
        throw Error(ErrorKind::SolverFailure, "radial Newton did not converge");
    return r;
}

}  // namespace

CartesianOval validate(const CartesianOval& oval) {
    if (!std::isfinite(oval.b) || !std::isfinite(oval.n) || !std::isfinite(oval.c))
        throw Error(ErrorKind::InvalidParameter, "parameters must be finite");
    if (oval.b < 0.0) throw Error(ErrorKind::InvalidParameter, "b must be >= 0");
    if (!(oval.n > 0.0)) throw Error(ErrorKind::InvalidParameter, "n must be > 0");
    if (!(oval.c > 0.0)) throw Error(ErrorKind::InvalidParameter, "c must be > 0");

    // The weighted sum d1 + n*d2 attains its global minimum min(b, n*b) on
    // the focal segment, where it is linear with endpoint values n*b and b.
    const double locus_min = std::min(oval.b, oval.n * oval.b);
    if (oval.c < locus_min) throw Error(ErrorKind::EmptyLocus, "c < min(b, n*b)");
    if (oval.c == locus_min)
        throw Error(ErrorKind::DegenerateLocus, "c = min(b, n*b): point locus");
    if (oval.n == 1.0 && oval.c == oval.b)
        throw Error(ErrorKind::DegenerateLocus, "n = 1 and c = b: locus is the focal segment");
    return oval;
}

double bipolar_residual(Point2 p, const CartesianOval& oval) {
    const double d1 = norm(p);
    const double d2 = distance(p, focus_far(oval));
    return d1 + oval.n * d2 - oval.c;
}

double quartic_residual(Point2 p, const CartesianOval& oval) {
    const double rr = p.x * p.x + p.y * p.y;
    const double n2 = oval.n * oval.n;
    const double inner = (1.0 - n2) * rr + 2.0 * n2 * oval.b * p.x + oval.c * oval.c - n2 * oval.b * oval.b;
    return inner * inner - 4.0 * oval.c * oval.c * rr;
}

Vec2 normal_at(Point2 p, const CartesianOval& oval, double on_curve_tol) {
    const double d1 = norm(p);
    const double d2 = distance(p, focus_far(oval));
    if (d1 < kFocusEps || d2 < kFocusEps)
        throw Error(ErrorKind::AtFocus, "normal undefined at a focus");
    const double residual = d1 + oval.n * d2 - oval.c;
    if (std::fabs(residual) > on_curve_tol)
        throw Error(ErrorKind::OffCurve, "bipolar residual exceeds tolerance");
    const Vec2 u1 = p / d1;
    const Vec2 u2 = (p - focus_far(oval)) / d2;
    return normalized(u1 + oval.n * u2);
}

std::optional<double> solve_radius(const CartesianOval& oval, double psi) {
    const double cos_psi = std::cos(psi);
    const double b = oval.b;
    const double n = oval.n;
    const double c = oval.c;

    const double g0 = n * b - c;  // residual at r = 0
    if (g0 < 0.0) {
        // F is enclosed by the curve; exactly one crossing per ray, and the
        // root cannot exceed c because r = d1 <= d1 + n*d2 = c on the curve.
        return polish_radial_root(oval, cos_psi, 0.0, c);
    }

    // g(0) >= 0 requires n > 1 for a validated oval. The residual has a
    // single interior critical point; solving g'(r) = 0 gives
    // r_crit = b cos(psi) - b|sin(psi)| / sqrt(n^2 - 1).
    if (n <= 1.0) return std::nullopt;
    const double sin_abs = std::fabs(std::sin(psi));
    const double r_crit = b * cos_psi - b * sin_abs / std::sqrt(n * n - 1.0);
    if (r_crit <= 0.0) return std::nullopt;  // residual increasing for r > 0
    const double g_min = radial_residual(oval, cos_psi, r_crit);
    if (g_min > 0.0) return std::nullopt;
    if (g_min == 0.0) return r_crit;  // tangent ray

    if (g0 > 0.0) return polish_radial_root(oval, cos_psi, 0.0, r_crit);
    // g0 == 0: the curve passes through F itself (c = n*b); the smallest
    // positive root lies beyond the dip.
    return polish_radial_root(oval, cos_psi, r_crit, c);
}

double radius_slope(const CartesianOval& oval, double psi, double r) {
    const double cos_psi = std::cos(psi);
    const double sin_psi = std::sin(psi);
    const double d2 = std::sqrt(std::max(0.0, r * r - 2.0 * oval.b * r * cos_psi + oval.b * oval.b));
    if (d2 < kFocusEps) throw Error(ErrorKind::AtFocus, "radial slope undefined through F'");
    const double g_psi = oval.n * (oval.b * r * sin_psi) / d2;
    const double g_r = 1.0 + oval.n * (r - oval.b * cos_psi) / d2;
    if (g_r == 0.0) throw Error(ErrorKind::SolverFailure, "tangent ray: dr/dpsi unbounded");
    return -g_psi / g_r;
}

std::vector<OvalSample> sample_curve(const CartesianOval& oval, int count) {
    validate(oval);
    if (count < 2) throw Error(ErrorKind::InvalidParameter, "sample count must be >= 2");

    std::vector<OvalSample> samples;
    samples.reserve(static_cast<std::size_t>(count));
    const double pi = std::acos(-1.0);
    for (int k = 0; k < count; ++k) {
        const double psi = -pi + 2.0 * pi * static_cast<double>(k) / static_cast<double>(count);
        const auto r = solve_radius(oval, psi);
        if (!r) continue;
        const Point2 p{*r * std::cos(psi), *r * std::sin(psi)};
        // Skip the measure-zero case where the solved point sits on a focus
        // (possible only when c = b or c = n*b).
        if (distance(p, focus_far(oval)) < kFocusEps || *r < kFocusEps) continue;
        samples.push_back({p, normal_at(p, oval), psi});
    }
    return samples;
}

}  // namespace ovalens
