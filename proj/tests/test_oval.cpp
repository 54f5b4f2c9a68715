#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "ovalens/oval.hpp"
#include "test_support.hpp"

using namespace ovalens;
using test_support::thrown_kind;

namespace {

// Independent oracle: brute-force grid scan of d1 + n*d2 over [-c, b+c]^2.
// The locus is nonempty and nondegenerate iff the scan finds values on both
// sides of c.
bool grid_scan_accepts(const CartesianOval& oval) {
    const int n = 161;
    double lowest = 1e300, highest = -1e300;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x = -oval.c + (oval.b + 2.0 * oval.c) * i / (n - 1.0);
            const double y = -oval.c + (oval.b + 2.0 * oval.c) * j / (n - 1.0);
            const double f = std::sqrt(x * x + y * y) +
                             oval.n * std::sqrt((oval.b - x) * (oval.b - x) + y * y);
            lowest = std::min(lowest, f);
            highest = std::max(highest, f);
        }
    }
    return lowest < oval.c && highest > oval.c;
}

long double bipolar_long_double(Point2 p, const CartesianOval& oval) {
    const long double d1 = sqrtl((long double)p.x * p.x + (long double)p.y * p.y);
    const long double dx = (long double)oval.b - p.x;
    const long double d2 = sqrtl(dx * dx + (long double)p.y * p.y);
    return d1 + (long double)oval.n * d2 - (long double)oval.c;
}

long double quartic_long_double(Point2 p, const CartesianOval& oval) {
    const long double rr = (long double)p.x * p.x + (long double)p.y * p.y;
    const long double n2 = (long double)oval.n * oval.n;
    const long double inner =
        (1.0L - n2) * rr + 2.0L * n2 * oval.b * p.x + (long double)oval.c * oval.c - n2 * oval.b * oval.b;
    return inner * inner - 4.0L * oval.c * oval.c * rr;
}

}  // namespace

TEST_CASE("validate accepts and rejects per the locus rule") {
    CHECK_NOTHROW(validate({1.0, 2.0, 1.5}));
    CHECK(thrown_kind([] { validate({1.0, 2.0, 0.5}); }) == ErrorKind::EmptyLocus);
    CHECK(thrown_kind([] { validate({1.0, 1.0, 1.0}); }) == ErrorKind::DegenerateLocus);
    CHECK(thrown_kind([] { validate({1.0, 2.0, 1.0}); }) == ErrorKind::DegenerateLocus);
    CHECK(thrown_kind([] { validate({-1.0, 2.0, 1.0}); }) == ErrorKind::InvalidParameter);
    CHECK(thrown_kind([] { validate({1.0, -2.0, 1.0}); }) == ErrorKind::InvalidParameter);
    CHECK(thrown_kind([] { validate({1.0, 2.0, 0.0}); }) == ErrorKind::InvalidParameter);
    CHECK(thrown_kind([] { validate({1.0, std::nan(""), 1.0}); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("validate agrees with the brute-force scan oracle") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ub(0.0, 2.5);
    std::uniform_real_distribution<double> un(0.1, 4.0);
    std::uniform_real_distribution<double> uc(0.05, 4.0);
    int tried = 0;
    for (int i = 0; i < 400 && tried < 120; ++i) {
        const CartesianOval oval{ub(rng), un(rng), uc(rng)};
        // Keep configurations away from the degeneracy boundary, where the
        // finite grid cannot decide.
        if (std::fabs(oval.c - std::min(oval.b, oval.n * oval.b)) < 0.02) continue;
        ++tried;
        bool accepted = true;
        try {
            validate(oval);
        } catch (const Error&) {
            accepted = false;
        }
        CAPTURE(oval.b);
        CAPTURE(oval.n);
        CAPTURE(oval.c);
        CHECK(accepted == grid_scan_accepts(oval));
    }
    CHECK(tried >= 100);
}

TEST_CASE("bipolar residual at on-axis points") {
    CHECK(bipolar_residual({0.0, 0.0}, {1.0, 2.0, 2.0}) == 0.0);
    CHECK(bipolar_residual({0.5, 0.0}, {1.0, 2.0, 1.5}) == 0.0);
}

TEST_CASE("bipolar residual matches the extended-precision distance oracle") {
    const CartesianOval oval{1.0, 2.0, 1.5};
    const Point2 p{0.5, 0.4};
    const double r = bipolar_residual(p, oval);
    CHECK(r > 0.0);  // outside the curve
    CHECK(std::fabs(r - (double)bipolar_long_double(p, oval)) < 1e-15);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const Point2 q{u(rng), u(rng)};
        CHECK(std::fabs(bipolar_residual(q, oval) - (double)bipolar_long_double(q, oval)) < 1e-13);
    }
}

TEST_CASE("quartic residual values") {
    const CartesianOval oval{1.0, 2.0, 1.5};
    CHECK(quartic_residual({0.5, 0.0}, oval) == 0.0);
    CHECK(quartic_residual({0.0, 0.0}, {1.0, 2.0, 2.0}) == 0.0);
    // (2,2): inner term (1-4)*8 + 8*2 + 2.25 - 4 = -9.75; 9.75^2 - 4*2.25*8.
    const double r = quartic_residual({2.0, 2.0}, oval);
    CHECK(r == doctest::Approx(23.0625).epsilon(1e-14));
    CHECK(r > 0.0);
    CHECK(std::fabs(r - (double)quartic_long_double({2.0, 2.0}, oval)) < 1e-12);
}

TEST_CASE("quartic residual is even in y, exactly") {
    const CartesianOval oval{1.3, 1.7, 2.4};
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const double x = u(rng), y = u(rng);
        CHECK(quartic_residual({x, y}, oval) == quartic_residual({x, -y}, oval));
    }
}

TEST_CASE("normal at on-axis points") {
    const Vec2 n1 = normal_at({0.5, 0.0}, {1.0, 2.0, 1.5});
    CHECK(n1.x == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(n1.y == 0.0);

    // Right of both foci the two focal directions coincide: oval(1, 0.5, 2)
    // crosses the axis at x + 0.5(x - 1) = 2, i.e. x = 5/3.
    const Vec2 n2 = normal_at({5.0 / 3.0, 0.0}, {1.0, 0.5, 2.0});
    CHECK(n2.x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(n2.y == 0.0);
}

TEST_CASE("normal errors") {
    CHECK(thrown_kind([] { normal_at({0.0, 0.0}, {1.0, 2.0, 2.0}); }) == ErrorKind::AtFocus);
    CHECK(thrown_kind([] { normal_at({0.3, 0.4}, {1.0, 2.0, 1.5}); }) == ErrorKind::OffCurve);
}

TEST_CASE("normal agrees with the finite-difference quartic gradient") {
    // The quartic form flips sign across the rationalization branches, so the
    // comparison is between unoriented directions.
    for (const CartesianOval oval : {CartesianOval{1.0, 2.0, 1.5}, CartesianOval{1.0, 1.5, 1.8}}) {
        const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
        for (const OvalSample& s : sample_curve(oval, 512)) {
            if (std::fabs(s.point.y) < 1e-6) continue;
            const double hx = h0 * std::max(1.0, std::fabs(s.point.x));
            const double hy = h0 * std::max(1.0, std::fabs(s.point.y));
            const Vec2 fd{(quartic_residual({s.point.x + hx, s.point.y}, oval) -
                           quartic_residual({s.point.x - hx, s.point.y}, oval)) /
                              (2.0 * hx),
                          (quartic_residual({s.point.x, s.point.y + hy}, oval) -
                           quartic_residual({s.point.x, s.point.y - hy}, oval)) /
                              (2.0 * hy)};
            const double angle = std::atan2(std::fabs(cross(s.normal, fd)),
                                            std::fabs(dot(s.normal, fd)));
            CHECK(angle < 1e-6);
        }
    }
}

TEST_CASE("sample_curve reproduces the on-axis solutions") {
    const auto samples = sample_curve({1.0, 2.0, 1.5}, 64);
    bool found = false;
    for (const OvalSample& s : samples) {
        if (s.psi == 0.0) {
            found = true;
            CHECK(s.point.x == doctest::Approx(0.5).epsilon(1e-13));
            CHECK(s.point.y == 0.0);
        }
    }
    CHECK(found);

    // psi = -pi is in the grid; for c = 4 > n*b the back crossing solves
    // r + 2(r + 1) = 4.
    const auto wide = sample_curve({1.0, 2.0, 4.0}, 64);
    CHECK(wide.size() == 64);  // enclosing curve: every angle has a solution
    CHECK(wide.front().point.x == doctest::Approx(-2.0 / 3.0).epsilon(1e-13));
    CHECK(std::fabs(wide.front().point.y) < 1e-12);
}

TEST_CASE("sample_curve mirror symmetry") {
    const auto samples = sample_curve({1.0, 2.0, 4.0}, 128);
    REQUIRE(samples.size() == 128);
    for (std::size_t k = 1; k < 64; ++k) {
        const OvalSample& a = samples[k];
        const OvalSample& b = samples[128 - k];
        CHECK(a.point.x == doctest::Approx(b.point.x).epsilon(1e-12));
        CHECK(a.point.y == doctest::Approx(-b.point.y).epsilon(1e-12));
    }
}

TEST_CASE("sample_curve invariants: residuals and unit normals") {
    for (const CartesianOval oval :
         {CartesianOval{1.0, 2.0, 1.5}, CartesianOval{1.0, 0.5, 2.0}, CartesianOval{2.0, 3.0, 2.6}}) {
        const auto samples = sample_curve(oval, 1200);
        CHECK(samples.size() >= 30);
        int tight = 0;
        for (const OvalSample& s : samples) {
            CHECK(std::fabs(bipolar_residual(s.point, oval)) < 1e-10);
            CHECK(std::fabs(quartic_residual(s.point, oval)) < 1e-8);
            CHECK(std::fabs(norm(s.normal) - 1.0) < 1e-12);
            if (std::fabs(bipolar_residual(s.point, oval)) < 1e-12) ++tight;
        }
        // bipolar => quartic on the tightly-converged subset
        CHECK(tight > static_cast<int>(samples.size() / 2));
    }
}

TEST_CASE("coincident foci give a circle of radius c/(1+n)") {
    const CartesianOval oval{0.0, 2.0, 1.0};
    const auto samples = sample_curve(oval, 64);
    CHECK(samples.size() == 64);
    for (const OvalSample& s : samples)
        CHECK(norm(s.point) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("solve_radius returns nothing outside the aperture") {
    CHECK(!solve_radius({1.0, 2.0, 1.5}, std::acos(-1.0)));  // back side unreachable
    CHECK(solve_radius({1.0, 2.0, 1.5}, 0.0).value() == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(thrown_kind([] { sample_curve({1.0, 2.0, 1.5}, 1); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("curve through the near focus: c = n*b exactly") {
    // The r = 0 root is the focus itself and must be skipped; the forward ray
    // still meets the far crossing x + 2(x-1) = 2, x = 4/3.
    const CartesianOval oval{1.0, 2.0, 2.0};
    CHECK(solve_radius(oval, 0.0).value() == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
    CHECK(!solve_radius(oval, std::acos(-1.0)));  // the backward root is F itself
    for (const OvalSample& s : sample_curve(oval, 256)) {
        CHECK(std::fabs(bipolar_residual(s.point, oval)) < 1e-10);
        CHECK(norm(s.point) > 1e-6);  // never the focus
    }
}
