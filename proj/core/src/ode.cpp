#include "ovalens/ode.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "ovalens/error.hpp"

namespace ovalens {

namespace {

constexpr double kFocusEps = 1e-14;

// Gradient of the conserved quantity; the curve tangent is its quarter turn.
Vec2 conserved_gradient(const OdeKind& kind, Point2 p) {
    if (const auto* tf = std::get_if<TwoFinite>(&kind)) {
        const double l1 = norm(p);
        const double l2 = distance(p, focus_far(tf->oval));
        if (l1 < kFocusEps || l2 < kFocusEps)
            throw Error(ErrorKind::FocusSingularity, "field singular at a focus");
        return p / l1 + tf->oval.n * ((p - focus_far(tf->oval)) / l2);
    }
    const auto& si = std::get<SourceAtInfinity>(kind);
    const Point2 f2{si.b, 0.0};
    const double l2 = distance(p, f2);
    if (l2 < kFocusEps) throw Error(ErrorKind::FocusSingularity, "field singular at the focus");
    return Vec2{1.0, 0.0} + si.n * ((p - f2) / l2);
}

double expected_constant(const OdeKind& kind) {
    if (const auto* tf = std::get_if<TwoFinite>(&kind)) return tf->oval.c;
    return std::get<SourceAtInfinity>(kind).c;
}

void validate_kind(const OdeKind& kind) {
    if (const auto* tf = std::get_if<TwoFinite>(&kind)) {
        validate(tf->oval);
        return;
    }
    const auto& si = std::get<SourceAtInfinity>(kind);
    if (!std::isfinite(si.b) || !std::isfinite(si.n) || !std::isfinite(si.c) || si.b < 0.0 ||
        si.n == 0.0)
        throw Error(ErrorKind::InvalidParameter, "source-at-infinity field needs finite b >= 0, n != 0");
}

// Unit-speed tangent aligned with the reference direction.
Vec2 unit_tangent(const OdeKind& kind, Point2 p, Vec2 reference) {
    const Vec2 g = conserved_gradient(kind, p);
    const double gn = norm(g);
    if (gn < 1e-13) throw Error(ErrorKind::StepFailure, "conserved-quantity gradient vanished");
    Vec2 t = rot90(g) / gn;
    if (dot(t, reference) < 0.0) t = -t;
    return t;
}

// Dormand-Prince 5(4) tableau.
struct Dopri5Step {
    Vec2 u_new;
    Vec2 k_last;   // FSAL stage, equals f(u_new)
    double error;  // scaled error norm, accept when <= 1
};

template <class F>
Dopri5Step dopri5_step(const F& f, Point2 u, Vec2 k1, double h, double tol) {
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                     b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const Vec2 k2 = f(u + h * (a21 * k1));
    const Vec2 k3 = f(u + h * (a31 * k1 + a32 * k2));
    const Vec2 k4 = f(u + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vec2 k5 = f(u + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vec2 k6 = f(u + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Vec2 u_new = u + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vec2 k7 = f(u_new);

    const Vec2 err_vec = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double sx = tol + tol * std::max(std::fabs(u.x), std::fabs(u_new.x));
    const double sy = tol + tol * std::max(std::fabs(u.y), std::fabs(u_new.y));
    const double ex = err_vec.x / sx;
    const double ey = err_vec.y / sy;
    return {u_new, k7, std::sqrt(0.5 * (ex * ex + ey * ey))};
}

struct Integrator {
    const OdeKind& kind;
    double tol;
    double h_min;
    Vec2 reference;  // tangent direction of the last accepted step

    Vec2 rhs(Point2 p) const { return unit_tangent(kind, p, reference); }

    // One accepted adaptive step from u with suggested size h (capped at
    // h_cap). Returns the new state and the actually taken h.
    struct Accepted {
        Point2 u;
        double h_taken;
        double h_next;
    };

    Accepted advance(Point2 u, Vec2 k1, double h, double h_cap, double& err_old) const {
        const auto f = [this](Point2 p) { return rhs(p); };
        for (int attempt = 0; attempt < 200; ++attempt) {
            const double h_eff = std::min(h, h_cap);
            const Dopri5Step trial = dopri5_step(f, u, k1, h_eff, tol);
            if (trial.error <= 1.0) {
                // PI controller (accepted): grow with both current and
                // previous error estimates.
                const double e = std::max(trial.error, 1e-10);
                double fac = 0.9 * std::pow(e, -0.17) * std::pow(err_old, 0.04);
                fac = std::clamp(fac, 0.2, 5.0);
                err_old = e;
                return {trial.u_new, h_eff, h_eff * fac};
            }
            const double fac = std::clamp(0.9 * std::pow(trial.error, -0.2), 0.1, 1.0);
            h = h_eff * fac;
            if (h < h_min)
                throw Error(ErrorKind::StepFailure, "step size underflow before meeting tolerance");
        }
        throw Error(ErrorKind::StepFailure, "too many step rejections");
    }
};

Trajectory start_trajectory(const OdeKind& kind, Point2 start, const IntegrateOptions& options) {
    validate_kind(kind);
    const double q0 = conserved_quantity(kind, start);
    if (std::fabs(q0 - expected_constant(kind)) > options.start_tol)
        throw Error(ErrorKind::StartOffCurve, "start point violates the curve equation");
    Trajectory traj{kind, {start}, q0, 0.0, 0.0};
    return traj;
}

void record(Trajectory& traj, Point2 p) {
    traj.points.push_back(p);
    const double q = conserved_quantity(traj.kind, p);
    traj.max_drift = std::max(traj.max_drift, std::fabs(q - traj.conserved_start));
}

}  // namespace

double ode1_rhs(double x, double y, const CartesianOval& oval) {
    const double l1 = std::sqrt(x * x + y * y);
    const double l2 = std::sqrt((oval.b - x) * (oval.b - x) + y * y);
    if (l1 < kFocusEps || l2 < kFocusEps)
        throw Error(ErrorKind::FocusSingularity, "slope undefined at a focus");
    if (y == 0.0) throw Error(ErrorKind::AxisSingularity, "vertical tangent at y = 0");
    const double num = oval.n * (oval.b - x) / l2 - x / l1;
    const double den = y / l1 + oval.n * y / l2;
    const double slope = num / den;
#ifndef NDEBUG
    // The slope must satisfy the pre-rearrangement ratio form
    // [y' y + x]/l1 = n [(b-x) - y' y]/l2 wherever the latter is well scaled.
    if (y > 0.0) {
        const double lhs = (slope * y + x) / l1;
        const double rhs = ((oval.b - x) - slope * y) / l2;
        if (std::fabs(rhs) > 1e-6)
            assert(std::fabs(lhs - oval.n * rhs) <= 1e-9 * (std::fabs(lhs) + std::fabs(oval.n * rhs) + 1.0));
    }
#endif
    return slope;
}

double ode2_rhs(double x, double y, double b, double n) {
    if (y == 0.0) throw Error(ErrorKind::AxisSingularity, "vertical tangent at y = 0");
    if (n == 0.0) throw Error(ErrorKind::InvalidParameter, "n must be nonzero");
    const double l = std::sqrt((b - x) * (b - x) + y * y);
    return ((b - x) - l / n) / y;
}

double conserved_quantity(const OdeKind& kind, Point2 p) {
    if (const auto* tf = std::get_if<TwoFinite>(&kind))
        return norm(p) + tf->oval.n * distance(p, focus_far(tf->oval));
    const auto& si = std::get<SourceAtInfinity>(kind);
    return p.x + si.n * distance(p, Point2{si.b, 0.0});
}

Trajectory integrate(const OdeKind& kind, Point2 start, double arc_span, double tol,
                     const IntegrateOptions& options) {
    if (!(arc_span >= 0.0) || !std::isfinite(arc_span))
        throw Error(ErrorKind::InvalidParameter, "arc span must be finite and >= 0");
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidParameter, "tolerance must be > 0");

    Trajectory traj = start_trajectory(kind, start, options);
    if (arc_span == 0.0) return traj;

    Integrator integ{kind, tol, options.min_step_factor * arc_span,
                     options.direction_hint.value_or(Vec2{1.0, 0.0})};
    if (!options.direction_hint) {
        // Deterministic default: the quarter-turned gradient itself.
        integ.reference = unit_tangent(kind, start, rot90(conserved_gradient(kind, start)));
    }

    Point2 u = start;
    Vec2 k1 = integ.rhs(u);
    integ.reference = k1;
    double s = 0.0;
    double h = std::min(0.01, arc_span);
    double err_old = 1e-4;
    while (arc_span - s > 1e-15 * arc_span) {
        const auto step = integ.advance(u, k1, h, arc_span - s, err_old);
        u = step.u;
        s += step.h_taken;
        h = step.h_next;
        integ.reference = integ.rhs(u);
        k1 = integ.reference;
        record(traj, u);
    }
    traj.arc_length = s;
    return traj;
}

Trajectory integrate_closed_loop(const OdeKind& kind, Point2 start, double tol,
                                 const IntegrateOptions& options) {
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidParameter, "tolerance must be > 0");
    Trajectory traj = start_trajectory(kind, start, options);

    const double span_cap = 128.0 * std::max(1.0, expected_constant(kind));
    Integrator integ{kind, tol, options.min_step_factor * span_cap,
                     options.direction_hint.value_or(Vec2{1.0, 0.0})};
    if (!options.direction_hint)
        integ.reference = unit_tangent(kind, start, rot90(conserved_gradient(kind, start)));

    Point2 u = start;
    Vec2 k1 = integ.rhs(u);
    integ.reference = k1;
    const Vec2 t0 = k1;
    double s = 0.0;
    double h = 0.01;
    double err_old = 1e-4;
    double side_prev = 0.0;
    while (s < span_cap) {
        const auto step = integ.advance(u, k1, h, span_cap - s, err_old);
        const double side_new = dot(step.u - start, t0);
        const Vec2 tangent_new = integ.rhs(step.u);
        if (side_prev < 0.0 && side_new >= 0.0 && dot(tangent_new, t0) > 0.0) {
            // Crossed back through the start section: shrink the final step
            // onto it by bisecting the step size.
            double lo = 0.0, hi = step.h_taken;
            Point2 u_hit = step.u;
            for (int i = 0; i < 80 && hi - lo > 1e-16 * std::max(1.0, s); ++i) {
                const double mid = 0.5 * (lo + hi);
                const auto f = [&](Point2 p) { return integ.rhs(p); };
                const Point2 u_mid = dopri5_step(f, u, k1, mid, tol).u_new;
                if (dot(u_mid - start, t0) >= 0.0) {
                    hi = mid;
                    u_hit = u_mid;
                } else {
                    lo = mid;
                }
            }
            u = u_hit;
            s += hi;
            record(traj, u);
            traj.arc_length = s;
            return traj;
        }
        u = step.u;
        s += step.h_taken;
        h = step.h_next;
        side_prev = side_new;
        integ.reference = tangent_new;
        k1 = tangent_new;
        record(traj, u);
    }
    throw Error(ErrorKind::StepFailure, "trajectory did not close within the span cap");
}

double conservation_drift(const Trajectory& traj) {
    if (traj.points.empty()) throw Error(ErrorKind::InvalidParameter, "empty trajectory");
    double drift = 0.0;
    for (const Point2& p : traj.points)
        drift = std::max(drift, std::fabs(conserved_quantity(traj.kind, p) - traj.conserved_start));
    return drift;
}

}  // namespace ovalens
