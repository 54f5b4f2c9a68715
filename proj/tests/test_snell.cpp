#include <cmath>
#include <random>

#include "doctest.h"
#include "ovalens/ode.hpp"
#include "ovalens/snell.hpp"
#include "test_support.hpp"

using namespace ovalens;
using test_support::thrown_kind;

TEST_CASE("sines_about_normal basic geometry") {
    const auto along = sines_about_normal({0.5, 0.0}, {-1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0});
    CHECK(along.sin_theta1 == 0.0);
    CHECK(along.sin_theta2 == 0.0);

    const auto tilted = sines_about_normal({0.0, 1.0}, {0.0, 1.0}, {0.0, 0.0}, {1.0, 0.0});
    CHECK(tilted.sin_theta1 == 0.0);
    CHECK(tilted.sin_theta2 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

    CHECK(thrown_kind([] {
              sines_about_normal({0.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}, {1.0, 0.0});
          }) == ErrorKind::CoincidentPoint);
}

TEST_CASE("snell ratio is the index everywhere off-axis") {
    for (const CartesianOval oval : {CartesianOval{1.0, 1.5, 1.2}, CartesianOval{1.0, 2.0, 1.5}}) {
        int checked = 0;
        for (const OvalSample& s : sample_curve(oval, 4096)) {
            if (std::fabs(s.point.y) < 1e-9) continue;
            CHECK(std::fabs(snell_ratio(s, oval) - oval.n) < 1e-9);
            ++checked;
        }
        CHECK(checked >= 200);
    }
}

TEST_CASE("snell ratio is constant for randomly drawn valid curves") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> ub(0.0, 2.0);
    std::uniform_real_distribution<double> un(0.2, 3.5);
    std::uniform_real_distribution<double> margin(0.05, 1.5);
    int curves = 0;
    while (curves < 20) {
        const double b = ub(rng);
        const double n = un(rng);
        const CartesianOval oval{b, n, std::min(b, n * b) + margin(rng)};
        try {
            validate(oval);
        } catch (const Error&) {
            continue;
        }
        ++curves;
        int checked = 0;
        for (const OvalSample& s : sample_curve(oval, 768)) {
            if (std::fabs(s.point.y) < 1e-9 * std::max(1.0, oval.c)) continue;
            CAPTURE(b);
            CAPTURE(n);
            CAPTURE(oval.c);
            CHECK(std::fabs(snell_ratio(s, oval) - n) < 1e-9);
            ++checked;
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("snell ratio degenerates on the axis") {
    const CartesianOval oval{1.0, 2.0, 1.5};
    bool found = false;
    for (const OvalSample& s : sample_curve(oval, 64)) {
        if (s.point.y != 0.0) continue;
        found = true;
        CHECK(thrown_kind([&] { snell_ratio(s, oval); }) == ErrorKind::AxialDegeneracy);
    }
    CHECK(found);
}

TEST_CASE("fundamental sines: the two routes agree on the curve") {
    const CartesianOval oval{1.0, 2.0, 1.5};
    int checked = 0;
    for (const OvalSample& s : sample_curve(oval, 2048)) {
        if (!(s.point.y > 1e-3)) continue;
        const double slope = ode1_rhs(s.point.x, s.point.y, oval);
        const auto [s1, s2] = fundamental_sines(s.point, oval, slope, 1e-10);
        const double l1 = norm(s.point);
        const double l2 = distance(s.point, focus_far(oval));
        CHECK(std::fabs(s1 - s.point.x / l1) < 1e-10);
        CHECK(std::fabs(s2 - (oval.b - s.point.x) / l2) < 1e-10);
        ++checked;
    }
    CHECK(checked >= 50);
}

TEST_CASE("fundamental sines near the axis limit and above F") {
    const CartesianOval oval{1.0, 2.0, 1.5};
    // Close to the vertex x -> l1, so sin(theta1 + phi) -> 1.
    const double psi = 1e-3;
    const double r = solve_radius(oval, psi).value();
    const Point2 p{r * std::cos(psi), r * std::sin(psi)};
    const double slope = ode1_rhs(p.x, p.y, oval);
    const auto near_axis = fundamental_sines(p, oval, slope, 1e-8);
    CHECK(near_axis.first == doctest::Approx(p.x / norm(p)).epsilon(1e-10));
    CHECK(near_axis.first > 0.999);

    // Vertically above F the first sine vanishes: pick c so (0, 1) is on the
    // curve, 1 + n*sqrt(2) = c.
    const CartesianOval above{1.0, 0.5, 1.0 + 0.5 * std::sqrt(2.0)};
    const double slope0 = ode1_rhs(0.0, 1.0, above);
    const auto at_zero = fundamental_sines({0.0, 1.0}, above, slope0, 1e-10);
    CHECK(std::fabs(at_zero.first) < 1e-12);
}

TEST_CASE("fundamental sines reject a wrong tangent") {
    const CartesianOval oval{1.0, 2.0, 1.5};
    const double psi = 0.25;
    const double r = solve_radius(oval, psi).value();
    const Point2 p{r * std::cos(psi), r * std::sin(psi)};
    const double slope = ode1_rhs(p.x, p.y, oval);
    CHECK(thrown_kind([&] { fundamental_sines(p, oval, slope + 0.05, 1e-10); }) ==
          ErrorKind::DisagreementBeyondTolerance);
    CHECK(thrown_kind([&] { fundamental_sines({0.5, -0.2}, oval, 0.0); }) ==
          ErrorKind::InvalidParameter);
}

TEST_CASE("refraction basics") {
    const Vec2 straight = refract_direction({1.0, 0.0}, {-1.0, 0.0}, 2.7);
    CHECK(straight.x == 1.0);
    CHECK(straight.y == 0.0);

    // 45 degrees in, ratio sqrt(2): transmitted sine 1/2.
    const double s = std::sqrt(0.5);
    const Vec2 t = refract_direction({s, s}, {-1.0, 0.0}, std::sqrt(2.0));
    CHECK(std::fabs(cross(t, Vec2{1.0, 0.0})) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(dot(t, Vec2{1.0, 0.0}) > 0.0);

    CHECK(thrown_kind([] {
              refract_direction({0.5, std::sqrt(3.0) / 2.0}, {-1.0, 0.0}, 0.8);
          }) == ErrorKind::TotalInternalReflection);
    CHECK(thrown_kind([] { refract_direction({1.0, 0.0}, {-1.0, 0.0}, 0.0); }) ==
          ErrorKind::InvalidRatio);
    CHECK(thrown_kind([] { refract_direction({1.0, 0.0}, {-1.0, 0.0}, -2.0); }) ==
          ErrorKind::InvalidRatio);
}

TEST_CASE("refraction properties over random geometry") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::acos(-1.0));
    std::uniform_real_distribution<double> uratio(0.3, 3.0);
    int accepted = 0;
    for (int i = 0; i < 500; ++i) {
        const double a1 = angle(rng);
        const double a2 = angle(rng);
        const Vec2 d{std::cos(a1), std::sin(a1)};
        const Vec2 n{std::cos(a2), std::sin(a2)};
        const double ratio = uratio(rng);
        Vec2 t;
        try {
            t = refract_direction(d, n, ratio);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::TotalInternalReflection);
            continue;
        }
        ++accepted;
        CHECK(std::fabs(norm(t) - 1.0) < 1e-14);
        // Snell's law in cross products.
        CHECK(std::fabs(std::fabs(cross(t, n)) * ratio - std::fabs(cross(d, n))) < 1e-12);
        // Identity at ratio 1.
        const Vec2 same = refract_direction(d, n, 1.0);
        CHECK(norm(same - d) < 1e-13);
        // Orientation of the normal is irrelevant.
        const Vec2 flipped = refract_direction(d, -n, ratio);
        CHECK(norm(flipped - t) < 1e-15);
        // Reversibility.
        const Vec2 back = refract_direction(t, -n, 1.0 / ratio);
        CHECK(norm(back - d) < 1e-10);
    }
    CHECK(accepted >= 200);
}
