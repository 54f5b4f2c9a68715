#pragma once

#include <utility>

#include "ovalens/geometry.hpp"

namespace ovalens {

enum class ConicKind { Ellipse, Hyperbola, Parabola, Segment, VerticalLine };

const char* to_string(ConicKind kind);

/// Canonical conic description for the limiting cases of the lens curve.
///
/// Ellipse / Hyperbola are stored in the form
///   (x - center_x)^2 / semi_axis_sq_x + y^2 / semi_axis_sq_y = 1,
/// with semi_axis_sq_y carrying its sign (negative encodes a hyperbola).
struct ConicSpec {
    ConicKind kind = ConicKind::Ellipse;
    double center_x = 0.0;
    double semi_axis_sq_x = 0.0;
    double semi_axis_sq_y = 0.0;
    double parabola_4b = 0.0;                 // Parabola: y^2 = parabola_4b * x
    std::pair<double, double> segment_ends{0.0, 0.0};
    double line_x = 0.0;                      // VerticalLine: x = line_x
    double eccentricity = 0.0;
};

/// The conic traced by the bipolar curve with index ratio +-1:
/// center b/2, x semi-axis squared c^2/4, y denominator (c^2 - b^2)/4 signed.
/// sign selects the bipolar form (+1: d1 + d2 = c, -1: |d1 - d2| = c); the
/// locus is an ellipse when c > b and a hyperbola when c < b.
/// Throws DegenerateLocus at c = b and EmptyLocus when the selected bipolar
/// form has no solutions.
ConicSpec conic_n_unity(double b, double c, int sign);

/// The curve refracting a parallel beam from -infinity to a focus at (b, 0),
/// normalized to pass through the origin (c = n*b):
///   n^2 != 1 -> (x - nb/(n+1))^2 / (nb/(n+1))^2 + y^2 / (b^2 (n-1)/(n+1)) = 1,
///               an ellipse for n^2 > 1, a hyperbola for n^2 < 1;
///   n = 1    -> the segment 0 <= x <= b of the x-axis;
///   n = -1   -> the parabola y^2 = 4 b x.
/// The eccentricity of every conic case is 1/|n|.
ConicSpec conic_infinite_source(double b, double n);

/// dist(P, focus (b,0)) - (1/|n|) * dist(P, directrix); zero on the curve
/// x + n*sqrt((b-x)^2 + y^2) = c. The directrix is the vertical line x = c,
/// read off directly from that equation: n*l2 = c - x.
/// Throws InvalidParameter for n = 1 (directrix at infinity).
double focus_directrix_residual(Point2 p, double b, double n, double c);

/// Both fixed points at infinity: the curve is the vertical line x = 0.
ConicSpec both_infinite_curve();

/// Implicit residual of the stored conic at a point (canonical-form LHS - 1
/// for ellipse/hyperbola, y^2 - 4b x for the parabola, x - line_x for the
/// vertical line). Throws InvalidParameter for Segment.
double conic_residual(const ConicSpec& conic, Point2 p);

/// Eccentricity recomputed from the stored semi-axes,
/// sqrt(1 - semi_axis_sq_y / semi_axis_sq_x); agrees with the stored value.
double eccentricity_from_axes(const ConicSpec& conic);

}  // namespace ovalens
