#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "ovalens/geometry.hpp"
#include "ovalens/oval.hpp"

namespace ovalens {

/// Slope field with both foci finite; conserved quantity Q = l1 + n*l2.
struct TwoFinite {
    CartesianOval oval;
};

/// Slope field with the radiant point at -infinity along the x-axis;
/// conserved quantity Q = x + n*l2 with l2 the distance to (b, 0).
struct SourceAtInfinity {
    double b = 1.0;
    double n = 1.5;
    double c = 1.5;
};

using OdeKind = std::variant<TwoFinite, SourceAtInfinity>;

/// y' = [n(b-x)/l2 - x/l1] / [y/l1 + n y/l2].
/// Throws AxisSingularity at y = 0 (vertical tangent) and FocusSingularity
/// at either focus.
double ode1_rhs(double x, double y, const CartesianOval& oval);

/// y' = [(b-x) - l/n] / y with l = sqrt((b-x)^2 + y^2).
/// Throws AxisSingularity at y = 0.
double ode2_rhs(double x, double y, double b, double n);

/// Conserved quantity of the given field at a point.
double conserved_quantity(const OdeKind& kind, Point2 p);

struct Trajectory {
    OdeKind kind;
    std::vector<Point2> points;   // accepted integration steps, start first
    double conserved_start = 0.0;
    double max_drift = 0.0;       // max |Q - conserved_start| over points
    double arc_length = 0.0;
};

struct IntegrateOptions {
    double start_tol = 1e-8;          // |Q(start) - c| gate
    double min_step_factor = 1e-14;   // h_min = factor * arc span
    std::optional<Vec2> direction_hint;  // initial tangent sign
};

/// Integrates the curve in arc length with an adaptive embedded 4th/5th-order
/// Runge-Kutta pair under PI step control. The unit-speed tangent field is
/// the quarter-turned gradient of the conserved quantity, with its sign
/// chosen to continue the previous direction, so axis crossings (vertical
/// tangents of the slope form) are passable.
Trajectory integrate(const OdeKind& kind, Point2 start, double arc_span, double tol,
                     const IntegrateOptions& options = {});

/// Integrates until the trajectory first returns through the transverse
/// section at the start point, refining the final step onto the section.
Trajectory integrate_closed_loop(const OdeKind& kind, Point2 start, double tol,
                                 const IntegrateOptions& options = {});

/// max over trajectory points of |Q(point) - conserved_start|.
double conservation_drift(const Trajectory& traj);

}  // namespace ovalens
