#include "ovalens/raytrace.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "ovalens/snell.hpp"

namespace ovalens {

namespace {

struct Bracket {
    double lo;
    double hi;
};

// Finds the leftmost sign change of f on [a, b] scanned in `steps` uniform
// intervals. Positive-valued dips are re-scanned once more finely so a pair
// of nearby crossings (a near-tangent ray) is not stepped over.
template <class F>
std::optional<Bracket> scan_for_bracket(const F& f, double a, double b, int steps, int depth) {
    const double h = (b - a) / steps;
    double t_pp = a, f_pp = 0.0;
    double t_p = a, f_p = f(a);
    bool have_pp = false;
    for (int i = 1; i <= steps; ++i) {
        const double t = (i == steps) ? b : a + i * h;
        const double ft = f(t);
        if (f_p == 0.0) return Bracket{t_p, t_p};
        if (f_p * ft < 0.0) return Bracket{t_p, t};
        if (have_pp && depth > 0 && f_p < f_pp && f_p < ft && f_p > 0.0) {
            if (auto sub = scan_for_bracket(f, t_pp, t, 24, depth - 1)) return sub;
        }
        t_pp = t_p;
        f_pp = f_p;
        have_pp = true;
        t_p = t;
        f_p = ft;
    }
    if (f_p == 0.0) return Bracket{t_p, t_p};
    return std::nullopt;
}

struct FanAccumulator {
    FocusReport report;
    std::vector<TraceSample>* per_ray = nullptr;
    double dev_sq_sum = 0.0;
    int successes = 0;

    void success(double param, Point2 hit, double deviation, double miss) {
        ++successes;
        dev_sq_sum += deviation * deviation;
        report.max_angular_deviation = std::max(report.max_angular_deviation, deviation);
        report.max_miss_distance = std::max(report.max_miss_distance, miss);
        if (per_ray) per_ray->push_back({param, hit, deviation, miss});
    }

    void failure(int ray, ErrorKind kind) { report.failures.push_back({ray, kind}); }

    FocusReport finish(int ray_count) {
        report.ray_count = ray_count;
        report.rms_angular_deviation =
            successes > 0 ? std::sqrt(dev_sq_sum / successes) : 0.0;
        return report;
    }
};

// Deviation of the transmitted ray from the line of sight to the target
// focus, plus the distance from that focus to the transmitted line.
std::pair<double, double> focus_deviation(Point2 hit, Vec2 transmitted, Point2 target) {
    const Vec2 to_target = target - hit;
    const double deviation = angle_between(transmitted, to_target);
    const double miss = std::fabs(cross(transmitted, to_target));
    return {deviation, miss};
}

}  // namespace

Point2 intersect_ray_oval(const Ray2& ray, const CartesianOval& oval) {
    validate(oval);
    if (norm(ray.direction) < 1e-14)
        throw Error(ErrorKind::InvalidParameter, "ray direction must be nonzero");
    const Vec2 d = normalized(ray.direction);
    const auto f = [&](double t) { return bipolar_residual(ray.origin + t * d, oval); };

    // Every curve point satisfies d1 <= c, so the curve lies inside the
    // disk of radius c about F; beyond t_hi the ray cannot meet it again.
    const double t_hi = norm(ray.origin) + 1.1 * oval.c;
    double a = 0.0;
    if (f(0.0) == 0.0) a = 1e-9 * oval.c;  // origin on the curve: want t > 0
    const int steps = std::max(128, static_cast<int>(std::ceil((t_hi - a) / (oval.c / 100.0))));
    const auto bracket = scan_for_bracket(f, a, t_hi, steps, 2);
    if (!bracket) throw Error(ErrorKind::NoIntersection, "ray does not meet the curve");

    double lo = bracket->lo, hi = bracket->hi;
    double flo = f(lo);
    const double f_tol = 1e-13 * std::max(1.0, oval.c);
    double t = 0.5 * (lo + hi);
    for (int iter = 0; iter < 120 && hi - lo > 0.0; ++iter) {
        const double ft = f(t);
        if (std::fabs(ft) < f_tol) return ray.origin + t * d;
        if ((ft < 0.0) == (flo < 0.0)) {
            lo = t;
            flo = ft;
        } else {
            hi = t;
        }
        const Point2 p = ray.origin + t * d;
        const double d1 = norm(p);
        const double d2 = distance(p, focus_far(oval));
        double next = 0.5 * (lo + hi);
        if (d1 > 1e-14 && d2 > 1e-14) {
            const double df = dot(d, p / d1 + oval.n * ((p - focus_far(oval)) / d2));
            if (df != 0.0) {
                const double newton = t - ft / df;
                if (newton > lo && newton < hi) next = newton;
            }
        }
        if (hi - lo < 1e-16 * std::max(1.0, hi)) break;
        t = next;
    }
    t = 0.5 * (lo + hi);
    if (std::fabs(f(t)) > 1e-12)
        throw Error(ErrorKind::SolverFailure, "intersection polish did not reach tolerance");
    return ray.origin + t * d;
}

FocusReport trace_fan(const CartesianOval& oval, int count, std::pair<double, double> psi_range,
                      std::vector<TraceSample>* per_ray) {
    validate(oval);
    if (count < 1) throw Error(ErrorKind::InvalidParameter, "ray count must be >= 1");
    if (!(psi_range.first <= psi_range.second))
        throw Error(ErrorKind::InvalidParameter, "psi range must be ordered");

    FanAccumulator acc;
    acc.per_ray = per_ray;
    const Point2 f1 = focus_near(oval);
    const Point2 f2 = focus_far(oval);
    for (int i = 0; i < count; ++i) {
        const double psi =
            count == 1 ? psi_range.first
                       : psi_range.first + (psi_range.second - psi_range.first) * i / (count - 1.0);
        try {
            const Vec2 dir{std::cos(psi), std::sin(psi)};
            const Point2 hit = intersect_ray_oval({f1, dir}, oval);
            const Vec2 normal = normal_at(hit, oval, 1e-9);
            const Vec2 transmitted = refract_direction(dir, normal, oval.n);
            const auto [deviation, miss] = focus_deviation(hit, transmitted, f2);
            acc.success(psi, hit, deviation, miss);
        } catch (const Error& e) {
            acc.failure(i, e.kind());
        }
    }
    return acc.finish(count);
}

FocusReport trace_fan_perturbed(const CartesianOval& oval, double eps, int k, int count,
                                std::pair<double, double> psi_range,
                                std::vector<TraceSample>* per_ray) {
    validate(oval);
    if (count < 1) throw Error(ErrorKind::InvalidParameter, "ray count must be >= 1");

    FanAccumulator acc;
    acc.per_ray = per_ray;
    const Point2 f2 = focus_far(oval);
    for (int i = 0; i < count; ++i) {
        const double psi =
            count == 1 ? psi_range.first
                       : psi_range.first + (psi_range.second - psi_range.first) * i / (count - 1.0);
        try {
            const auto r0 = solve_radius(oval, psi);
            if (!r0) throw Error(ErrorKind::NoIntersection, "no radial solution");
            const double bump = 1.0 + eps * std::cos(k * psi);
            const double r = *r0 * bump;
            const double dr =
                radius_slope(oval, psi, *r0) * bump - *r0 * eps * k * std::sin(k * psi);
            const double cp = std::cos(psi), sp = std::sin(psi);
            const Point2 hit{r * cp, r * sp};
            const Vec2 tangent{dr * cp - r * sp, dr * sp + r * cp};
            const Vec2 normal = normalized(rot90(tangent));
            const Vec2 transmitted = refract_direction({cp, sp}, normal, oval.n);
            const auto [deviation, miss] = focus_deviation(hit, transmitted, f2);
            acc.success(psi, hit, deviation, miss);
        } catch (const Error& e) {
            acc.failure(i, e.kind());
        }
    }
    return acc.finish(count);
}

FocusReport trace_parallel_fan(const ConicSpec& conic, double b, double n, int count,
                               std::vector<TraceSample>* per_ray) {
    if (conic.kind != ConicKind::Ellipse && conic.kind != ConicKind::Hyperbola)
        throw Error(ErrorKind::InvalidParameter, "parallel fan needs an ellipse or hyperbola");
    if (count < 1) throw Error(ErrorKind::InvalidParameter, "ray count must be >= 1");

    FanAccumulator acc;
    acc.per_ray = per_ray;
    const double half_aperture = 0.95 * std::sqrt(std::fabs(conic.semi_axis_sq_y));
    const Point2 target{b, 0.0};
    for (int i = 0; i < count; ++i) {
        const double h =
            count == 1 ? 0.0 : -half_aperture + 2.0 * half_aperture * i / (count - 1.0);
        try {
            const double under = conic.semi_axis_sq_x * (1.0 - h * h / conic.semi_axis_sq_y);
            if (under < 0.0) throw Error(ErrorKind::NoIntersection, "height outside the aperture");
            const double x = conic.center_x - std::sqrt(under);  // first surface along +x
            const Point2 hit{x, h};
            const Vec2 normal = normalized(Vec2{2.0 * (x - conic.center_x) / conic.semi_axis_sq_x,
                                                2.0 * h / conic.semi_axis_sq_y});
            const Vec2 transmitted = refract_direction({1.0, 0.0}, normal, n);
            const auto [deviation, miss] = focus_deviation(hit, transmitted, target);
            acc.success(h, hit, deviation, miss);
        } catch (const Error& e) {
            acc.failure(i, e.kind());
        }
    }
    return acc.finish(count);
}

double aperture_half_angle(const CartesianOval& oval) {
    validate(oval);
    const double pi = std::acos(-1.0);
    if (oval.c > oval.n * oval.b) return pi;
    double lo = 0.0, hi = pi;  // solution exists at psi = 0, none at pi
    if (solve_radius(oval, hi)) return pi;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (solve_radius(oval, mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace ovalens
