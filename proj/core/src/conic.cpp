#include "ovalens/conic.hpp"

#include <cmath>

#include "ovalens/error.hpp"

namespace ovalens {

const char* to_string(ConicKind kind) {
    switch (kind) {
        case ConicKind::Ellipse: return "Ellipse";
        case ConicKind::Hyperbola: return "Hyperbola";
        case ConicKind::Parabola: return "Parabola";
        case ConicKind::Segment: return "Segment";
        case ConicKind::VerticalLine: return "VerticalLine";
    }
    return "Unknown";
}

ConicSpec conic_n_unity(double b, double c, int sign) {
    if (!std::isfinite(b) || !std::isfinite(c) || b < 0.0 || !(c > 0.0))
        throw Error(ErrorKind::InvalidParameter, "requires finite b >= 0 and c > 0");
    if (sign != 1 && sign != -1) throw Error(ErrorKind::InvalidParameter, "sign must be +-1");
    if (c == b) throw Error(ErrorKind::DegenerateLocus, "c = b");
    // d1 + d2 = c needs c > b; |d1 - d2| = c needs c < b.
    if (sign == 1 && c < b) throw Error(ErrorKind::EmptyLocus, "d1 + d2 = c has no points for c < b");
    if (sign == -1 && c > b)
        throw Error(ErrorKind::EmptyLocus, "|d1 - d2| = c has no points for c > b");

    ConicSpec spec;
    spec.center_x = 0.5 * b;
    spec.semi_axis_sq_x = 0.25 * c * c;
    spec.semi_axis_sq_y = 0.25 * (c * c - b * b);
    spec.kind = (c > b) ? ConicKind::Ellipse : ConicKind::Hyperbola;
    spec.eccentricity = b / c;
    return spec;
}

ConicSpec conic_infinite_source(double b, double n) {
    if (!(b > 0.0) || !std::isfinite(b) || n == 0.0 || !std::isfinite(n))
        throw Error(ErrorKind::InvalidParameter, "requires finite b > 0 and n != 0");

    ConicSpec spec;
    if (n == 1.0) {
        spec.kind = ConicKind::Segment;
        spec.segment_ends = {0.0, b};
        spec.eccentricity = 1.0;
        return spec;
    }
    if (n == -1.0) {
        spec.kind = ConicKind::Parabola;
        spec.parabola_4b = 4.0 * b;
        spec.eccentricity = 1.0;
        return spec;
    }
    const double a = n * b / (n + 1.0);
    spec.center_x = a;
    spec.semi_axis_sq_x = a * a;
    spec.semi_axis_sq_y = b * b * (n - 1.0) / (n + 1.0);
    spec.kind = (n * n > 1.0) ? ConicKind::Ellipse : ConicKind::Hyperbola;
    spec.eccentricity = 1.0 / std::fabs(n);
    return spec;
}

double focus_directrix_residual(Point2 p, double b, double n, double c) {
    if (n == 1.0)
        throw Error(ErrorKind::InvalidParameter, "n = 1 puts the directrix at infinity");
    if (n == 0.0 || !std::isfinite(n)) throw Error(ErrorKind::InvalidParameter, "n must be finite and nonzero");
    const double dist_focus = distance(p, Point2{b, 0.0});
    const double dist_directrix = std::fabs(p.x - c);
    return dist_focus - dist_directrix / std::fabs(n);
}

ConicSpec both_infinite_curve() {
    ConicSpec spec;
    spec.kind = ConicKind::VerticalLine;
    spec.line_x = 0.0;
    return spec;
}

double conic_residual(const ConicSpec& conic, Point2 p) {
    switch (conic.kind) {
        case ConicKind::Ellipse:
        case ConicKind::Hyperbola: {
            const double dx = p.x - conic.center_x;
            return dx * dx / conic.semi_axis_sq_x + p.y * p.y / conic.semi_axis_sq_y - 1.0;
        }
        case ConicKind::Parabola:
            return p.y * p.y - conic.parabola_4b * p.x;
        case ConicKind::VerticalLine:
            return p.x - conic.line_x;
        case ConicKind::Segment:
            throw Error(ErrorKind::InvalidParameter, "segment has no implicit residual");
    }
    throw Error(ErrorKind::InvalidParameter, "unknown conic kind");
}

double eccentricity_from_axes(const ConicSpec& conic) {
    if (conic.kind != ConicKind::Ellipse && conic.kind != ConicKind::Hyperbola)
        throw Error(ErrorKind::InvalidParameter, "eccentricity from axes needs an ellipse or hyperbola");
    return std::sqrt(1.0 - conic.semi_axis_sq_y / conic.semi_axis_sq_x);
}

}  // namespace ovalens
