#include <cmath>

#include "doctest.h"
#include "ovalens/conic.hpp"
#include "ovalens/ode.hpp"
#include "ovalens/oval.hpp"
#include "ovalens/snell.hpp"
#include "test_support.hpp"

using namespace ovalens;
using test_support::thrown_kind;

TEST_CASE("unit-index conic from the bipolar parameters") {
    const ConicSpec ell = conic_n_unity(1.0, 2.0, 1);
    CHECK(ell.kind == ConicKind::Ellipse);
    CHECK(ell.center_x == 0.5);
    CHECK(ell.semi_axis_sq_x == 1.0);
    CHECK(ell.semi_axis_sq_y == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(ell.eccentricity == 0.5);

    const ConicSpec hyp = conic_n_unity(2.0, 1.0, -1);
    CHECK(hyp.kind == ConicKind::Hyperbola);
    CHECK(hyp.semi_axis_sq_y == doctest::Approx(-0.75).epsilon(1e-15));
    CHECK(hyp.eccentricity == 2.0);

    // Coincident foci: the circle of radius c/2.
    const ConicSpec circle = conic_n_unity(0.0, 2.0, 1);
    CHECK(circle.kind == ConicKind::Ellipse);
    CHECK(circle.semi_axis_sq_x == 1.0);
    CHECK(circle.semi_axis_sq_y == 1.0);
    CHECK(circle.eccentricity == 0.0);

    CHECK(thrown_kind([] { conic_n_unity(1.0, 1.0, 1); }) == ErrorKind::DegenerateLocus);
    CHECK(thrown_kind([] { conic_n_unity(1.0, 0.5, 1); }) == ErrorKind::EmptyLocus);
    CHECK(thrown_kind([] { conic_n_unity(1.0, 2.0, -1); }) == ErrorKind::EmptyLocus);
    CHECK(thrown_kind([] { conic_n_unity(1.0, 2.0, 3); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("infinite-source conic for n = 2") {
    const ConicSpec conic = conic_infinite_source(1.0, 2.0);
    CHECK(conic.kind == ConicKind::Ellipse);
    CHECK(conic.center_x == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(conic.semi_axis_sq_x == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
    CHECK(conic.semi_axis_sq_y == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(conic.eccentricity == 0.5);
    CHECK(eccentricity_from_axes(conic) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("infinite-source degenerate and reciprocal cases") {
    const ConicSpec seg = conic_infinite_source(1.0, 1.0);
    CHECK(seg.kind == ConicKind::Segment);
    CHECK(seg.segment_ends.first == 0.0);
    CHECK(seg.segment_ends.second == 1.0);

    const ConicSpec par = conic_infinite_source(1.0, -1.0);
    CHECK(par.kind == ConicKind::Parabola);
    CHECK(par.parabola_4b == 4.0);
    CHECK(par.eccentricity == 1.0);

    const ConicSpec hyp = conic_infinite_source(1.0, 0.5);
    CHECK(hyp.kind == ConicKind::Hyperbola);
    CHECK(hyp.center_x == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(hyp.semi_axis_sq_y == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(hyp.eccentricity == 2.0);

    CHECK(thrown_kind([] { conic_infinite_source(1.0, 0.0); }) == ErrorKind::InvalidParameter);
    CHECK(thrown_kind([] { conic_infinite_source(0.0, 2.0); }) == ErrorKind::InvalidParameter);
    CHECK(thrown_kind([] { conic_infinite_source(-1.0, 2.0); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("eccentricity is the reciprocal of the index across the parameter range") {
    for (double n : {0.1, 0.25, 0.5, 0.9, 1.1, 1.5, 2.0, 3.7, 10.0, -0.4, -2.5, -10.0}) {
        for (double b : {0.5, 1.0, 2.0}) {
            const ConicSpec conic = conic_infinite_source(b, n);
            CHECK(std::fabs(conic.eccentricity - 1.0 / std::fabs(n)) < 1e-12);
            CHECK(std::fabs(eccentricity_from_axes(conic) - 1.0 / std::fabs(n)) < 1e-12);
        }
    }
}

TEST_CASE("infinite-source conic satisfies the conserved relation x + n*l2 = n*b") {
    // Ellipse (n > 1): the whole curve. Hyperbola (n < 1): the branch through
    // the origin; the far branch is a rationalization artifact.
    const double b = 1.0;
    for (double n : {1.5, 2.0, 3.0}) {
        const ConicSpec conic = conic_infinite_source(b, n);
        const double ax = std::sqrt(conic.semi_axis_sq_x);
        const double ay = std::sqrt(conic.semi_axis_sq_y);
        for (int i = 0; i < 200; ++i) {
            const double t = 2.0 * std::acos(-1.0) * i / 200.0;
            const Point2 p{conic.center_x + ax * std::cos(t), ay * std::sin(t)};
            const double q = p.x + n * distance(p, {b, 0.0});
            CHECK(std::fabs(q - n * b) < 1e-10);
            if (std::fabs(p.y) > 1e-6) {
                const double conic_slope = -(2.0 * (p.x - conic.center_x) / conic.semi_axis_sq_x) /
                                           (2.0 * p.y / conic.semi_axis_sq_y);
                CHECK(std::fabs(ode2_rhs(p.x, p.y, b, n) - conic_slope) <=
                      1e-10 * std::max(1.0, std::fabs(conic_slope)));
            }
        }
    }
    {
        const double n = 0.5;
        const ConicSpec conic = conic_infinite_source(b, n);
        const double ax = std::sqrt(conic.semi_axis_sq_x);
        const double ay = std::sqrt(-conic.semi_axis_sq_y);
        // Left branch via x = cx - ax*cosh(s).
        for (int i = 0; i < 100; ++i) {
            const double s = -2.0 + 4.0 * i / 99.0;
            const Point2 p{conic.center_x - ax * std::cosh(s), ay * std::sinh(s)};
            const double q = p.x + n * distance(p, {b, 0.0});
            CHECK(std::fabs(q - n * b) < 1e-10);
        }
    }
}

TEST_CASE("focus-directrix ratio is constant and equals the reciprocal index") {
    // Curve: x + n*l2 = c, directrix x = c, ratio dist_focus/dist_line = 1/|n|.
    for (double n : {1.5, 2.0, 0.5}) {
        for (double c : {1.7, 2.0, 0.8}) {
            const double b = 1.0;
            for (int i = 0; i < 120; ++i) {
                const double l2 = (c - (-2.0 + 4.5 * i / 119.0)) / n;  // candidate focal distance
                const double x = c - n * l2;
                if (!(l2 > 0.0)) continue;
                const double y_sq = l2 * l2 - (b - x) * (b - x);
                if (y_sq < 0.0) continue;
                const Point2 p{x, std::sqrt(y_sq)};
                CHECK(std::fabs(focus_directrix_residual(p, b, n, c)) < 1e-12);
                const double ratio = distance(p, {b, 0.0}) / std::fabs(p.x - c);
                CHECK(ratio == doctest::Approx(1.0 / std::fabs(n)).epsilon(1e-12));
            }
        }
    }
    // Vertex arithmetic for n = 2, b = 1, c = 2: crossings at x = 0 and 4/3.
    CHECK(std::fabs(focus_directrix_residual({0.0, 0.0}, 1.0, 2.0, 2.0)) < 1e-15);
    const double vertex_ratio = distance({4.0 / 3.0, 0.0}, {1.0, 0.0}) / std::fabs(4.0 / 3.0 - 2.0);
    CHECK(vertex_ratio == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(thrown_kind([] { focus_directrix_residual({0.0, 0.0}, 1.0, 1.0, 2.0); }) ==
          ErrorKind::InvalidParameter);
}

TEST_CASE("both points at infinity give the flat interface") {
    const ConicSpec flat = both_infinite_curve();
    CHECK(flat.kind == ConicKind::VerticalLine);
    CHECK(flat.line_x == 0.0);
    CHECK(conic_residual(flat, {0.0, 5.0}) == 0.0);

    // Normal incidence is undeviated; an oblique parallel beam stays parallel.
    const Vec2 straight = refract_direction({1.0, 0.0}, {-1.0, 0.0}, 1.9);
    CHECK(straight.x == 1.0);
    CHECK(straight.y == 0.0);
    const Vec2 incident{std::cos(0.4), std::sin(0.4)};
    const Vec2 t0 = refract_direction(incident, {-1.0, 0.0}, 1.9);
    for (int i = 1; i < 50; ++i) {
        const Vec2 ti = refract_direction(incident, {-1.0, 0.0}, 1.9);
        CHECK(angle_between(t0, ti) < 1e-12);
    }
}

TEST_CASE("unit-index conic and the bipolar residual vanish together") {
    const double b = 1.0, c = 2.0;
    const ConicSpec conic = conic_n_unity(b, c, 1);
    const CartesianOval oval{b, 1.0, c};
    const double ax = std::sqrt(conic.semi_axis_sq_x);
    const double ay = std::sqrt(conic.semi_axis_sq_y);
    for (int i = 0; i < 500; ++i) {
        const double t = 2.0 * std::acos(-1.0) * i / 500.0;
        // On-curve and scaled-off-curve probes.
        for (double scale : {1.0, 1.15}) {
            const Point2 p{conic.center_x + scale * ax * std::cos(t), scale * ay * std::sin(t)};
            const bool on_conic = std::fabs(conic_residual(conic, p)) < 1e-8;
            const bool on_oval = std::fabs(bipolar_residual(p, oval)) < 1e-8;
            CHECK(on_conic == on_oval);
            if (scale == 1.0) CHECK(on_conic);
        }
    }
    CHECK(thrown_kind([&] { conic_residual(conic_infinite_source(1.0, 1.0), {0.5, 0.0}); }) ==
          ErrorKind::InvalidParameter);
}
