#include "ovalens/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "ovalens/conic.hpp"
#include "ovalens/error.hpp"
#include "ovalens/io.hpp"
#include "ovalens/ode.hpp"
#include "ovalens/oval.hpp"
#include "ovalens/raytrace.hpp"
#include "ovalens/revolution.hpp"
#include "ovalens/snell.hpp"

namespace ovalens::verify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

struct Gate {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& msg) {
        if (!cond) ok = false;
        if (!detail.empty()) detail += "; ";
        detail += (cond ? "" : "FAIL ") + msg;
    }
};

std::vector<CartesianOval> acceptance_grid() {
    std::vector<CartesianOval> grid;
    for (double n : {1.2, 1.5, 2.0, 3.0})
        for (double b : {0.5, 1.0, 2.0})
            grid.push_back({b, n, 1.2 * std::min(b, n * b) + 0.2});
    return grid;
}

std::vector<OvalSample> off_axis_samples(const CartesianOval& oval, int wanted) {
    int grid_count = wanted + wanted / 8 + 16;
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<OvalSample> all = sample_curve(oval, grid_count);
        std::vector<OvalSample> off;
        off.reserve(all.size());
        for (const OvalSample& s : all)
            if (std::fabs(s.point.y) > 1e-12) off.push_back(s);
        if (static_cast<int>(off.size()) >= wanted) return off;
        grid_count *= 2;
    }
    throw Error(ErrorKind::SolverFailure, "could not collect enough off-axis samples");
}

std::vector<SurfaceSample> ovoid_samples(const CartesianOval& oval, int wanted) {
    int psi_count = 8 * wanted / 17 + 32;
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<SurfaceSample> samples = sample_revolved_oval(oval, psi_count, 17);
        if (static_cast<int>(samples.size()) >= wanted) return samples;
        psi_count *= 2;
    }
    throw Error(ErrorKind::SolverFailure, "could not collect enough surface samples");
}

// Unit-direction samples of the triaxial ellipsoid x^2 + 2y^2 + 3z^2 = 1.
std::vector<Point3> triaxial_samples(int count, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Point3> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        Vec3 u{gauss(rng), gauss(rng), gauss(rng)};
        const double q = u.x * u.x + 2.0 * u.y * u.y + 3.0 * u.z * u.z;
        if (q < 1e-12) continue;
        out.push_back(u / std::sqrt(q));
    }
    return out;
}

ScalarField3 triaxial_field() {
    ScalarField3 f;
    f.value = [](Point3 p) { return p.x * p.x + 2.0 * p.y * p.y + 3.0 * p.z * p.z - 1.0; };
    f.gradient = [](Point3 p) { return Vec3{2.0 * p.x, 4.0 * p.y, 6.0 * p.z}; };
    return f;
}

// Angle between two directions compared as unoriented lines.
double line_angle(Vec2 a, Vec2 b) {
    return std::atan2(std::fabs(cross(a, b)), std::fabs(dot(a, b)));
}

CriterionResult snell_ratio_constancy() {
    const auto t0 = Clock::now();
    Gate gate;
    double worst = 0.0;
    for (const CartesianOval& oval : acceptance_grid()) {
        const auto samples = off_axis_samples(oval, 10000);
        for (const OvalSample& s : samples)
            worst = std::max(worst, std::fabs(snell_ratio(s, oval) - oval.n));
    }
    const double elapsed = seconds_since(t0);
    gate.require(worst < 1e-9, "max|ratio-n|=" + num(worst) + " (<1e-9)");
    gate.require(elapsed < 2.0, "runtime=" + num(elapsed) + "s (<2s)");
    return {1, "snell-ratio-constancy", gate.ok, gate.detail, elapsed};
}

CriterionResult conservation_two_finite() {
    const auto t0 = Clock::now();
    Gate gate;
    double worst_drift = 0.0, worst_closure = 0.0, worst_quartic = 0.0, worst_time = 0.0;
    for (const CartesianOval& oval : acceptance_grid()) {
        const double psi0 = 0.5 * aperture_half_angle(oval);
        const double r = solve_radius(oval, psi0).value();
        const Point2 start{r * std::cos(psi0), r * std::sin(psi0)};
        const auto t1 = Clock::now();
        const Trajectory traj = integrate_closed_loop(TwoFinite{oval}, start, 1e-10);
        worst_time = std::max(worst_time, seconds_since(t1));
        worst_drift = std::max(worst_drift, traj.max_drift);
        worst_closure = std::max(worst_closure, distance(traj.points.back(), start));
        for (const Point2& p : traj.points)
            worst_quartic = std::max(worst_quartic, std::fabs(quartic_residual(p, oval)));
    }
    gate.require(worst_drift < 1e-8, "max drift=" + num(worst_drift) + " (<1e-8)");
    gate.require(worst_closure < 1e-6, "max closure gap=" + num(worst_closure) + " (<1e-6)");
    gate.require(worst_quartic < 1e-7, "max quartic residual=" + num(worst_quartic) + " (<1e-7)");
    gate.require(worst_time < 1.0, "max per-oval runtime=" + num(worst_time) + "s (<1s)");
    return {2, "conservation-two-finite", gate.ok, gate.detail, seconds_since(t0)};
}

CriterionResult conservation_infinite_source() {
    const auto t0 = Clock::now();
    Gate gate;
    double worst = 0.0;
    for (double n : {1.5, 2.0}) {
        const double b = 1.0;
        const ConicSpec conic = conic_infinite_source(b, n);
        const Point2 start{conic.center_x, std::sqrt(conic.semi_axis_sq_y)};
        const SourceAtInfinity kind{b, n, n * b};
        const Trajectory traj = integrate(kind, start, 1.2, 1e-10);
        worst = std::max(worst, traj.max_drift);
    }
    gate.require(worst < 1e-8, "max drift=" + num(worst) + " (<1e-8)");
    return {3, "conservation-infinite-source", gate.ok, gate.detail, seconds_since(t0)};
}

CriterionResult perfect_focus_fan() {
    const auto t0 = Clock::now();
    Gate gate;
    const CartesianOval oval{1.0, 1.5, 1.2};
    const FocusReport clean = trace_fan(oval, 1000, {-1.2, 1.2});
    const int hits = clean.ray_count - static_cast<int>(clean.failures.size());
    const FocusReport bumped = trace_fan_perturbed(oval, 1e-3, 5, 1000, {-1.2, 1.2});
    const double elapsed = seconds_since(t0);
    gate.require(hits >= 100, std::to_string(hits) + " rays hit");
    gate.require(clean.max_angular_deviation < 1e-8,
                 "max deviation=" + num(clean.max_angular_deviation) + " (<1e-8)");
    gate.require(bumped.max_angular_deviation > 1e-4,
                 "perturbed deviation=" + num(bumped.max_angular_deviation) + " (>1e-4)");
    gate.require(elapsed < 1.0, "runtime=" + num(elapsed) + "s (<1s)");
    return {4, "perfect-focus-fan", gate.ok, gate.detail, elapsed};
}

CriterionResult infinite_source_conic() {
    const auto t0 = Clock::now();
    Gate gate;
    const ConicSpec conic = conic_infinite_source(1.0, 2.0);
    const FocusReport report = trace_parallel_fan(conic, 1.0, 2.0, 500);
    gate.require(report.failures.empty(), "all 500 rays hit");
    gate.require(report.max_angular_deviation < 1e-8,
                 "max deviation=" + num(report.max_angular_deviation) + " (<1e-8)");
    const double ecc = eccentricity_from_axes(conic);
    gate.require(std::fabs(ecc - 0.5) < 1e-12 && std::fabs(conic.eccentricity - 0.5) < 1e-12,
                 "|eccentricity-1/n|=" + num(std::fabs(ecc - 0.5)) + " (<1e-12)");
    return {5, "infinite-source-conic", gate.ok, gate.detail, seconds_since(t0)};
}

CriterionResult degenerate_limits() {
    const auto t0 = Clock::now();
    Gate gate;
    bool segments_ok = true, parabolas_ok = true;
    for (double b : {0.5, 1.0, 2.0}) {
        const ConicSpec seg = conic_infinite_source(b, 1.0);
        segments_ok = segments_ok && seg.kind == ConicKind::Segment &&
                      seg.segment_ends.first == 0.0 && seg.segment_ends.second == b;
        const ConicSpec par = conic_infinite_source(b, -1.0);
        parabolas_ok = parabolas_ok && par.kind == ConicKind::Parabola &&
                       par.parabola_4b == 4.0 * b;
    }
    gate.require(segments_ok, "n=1 gives the segment [0,b]");
    gate.require(parabolas_ok, "n=-1 gives parabola_4b=4b");

    const ConicSpec flat = both_infinite_curve();
    gate.require(flat.kind == ConicKind::VerticalLine && flat.line_x == 0.0,
                 "both-infinite curve is x=0");

    // An oblique parallel beam refracted by the flat interface stays parallel.
    const Vec2 incident{std::cos(0.35), std::sin(0.35)};
    double spread = 0.0;
    Vec2 first{};
    for (int i = 0; i < 100; ++i) {
        const Vec2 t = refract_direction(incident, {-1.0, 0.0}, 1.7);
        if (i == 0)
            first = t;
        else
            spread = std::max(spread, angle_between(first, t));
    }
    const Vec2 axial = refract_direction({1.0, 0.0}, {-1.0, 0.0}, 1.7);
    gate.require(spread < 1e-12, "beam spread=" + num(spread) + " (<1e-12)");
    gate.require(angle_between(axial, {1.0, 0.0}) == 0.0, "normal incidence undeviated");
    return {6, "degenerate-limits", gate.ok, gate.detail, seconds_since(t0)};
}

CriterionResult revolution_certificates(unsigned seed) {
    const auto t0 = Clock::now();
    Gate gate;
    const CartesianOval oval{1.0, 2.0, 1.5};
    const auto samples = ovoid_samples(oval, 1000);
    const ScalarField3 field = revolved_field(RevolvedSurface{oval});
    const AxisLine axis = x_axis();
    const Point3 f1{0.0, 0.0, 0.0};
    const Point3 f2{oval.b, 0.0, 0.0};

    double worst_det = 0.0, worst_cop = 0.0, worst_axis = 0.0;
    int min_rank = 3;
    for (const SurfaceSample& s : samples) {
        worst_det = std::max(worst_det, std::fabs(revolution_det(field, axis, s.point)));
        worst_cop = std::max(worst_cop, std::fabs(coplanarity_residual(s.point, s.normal, f1, f2)));
        worst_axis = std::max(worst_axis, normal_axis_intersection(s.point, s.normal, axis));
        min_rank = std::min(min_rank, jacobian_pair_rank(axis, s.point));
    }
    gate.require(worst_det < 1e-9, "ovoid max|det|=" + num(worst_det) + " (<1e-9)");
    gate.require(worst_cop < 1e-9, "ovoid max|coplanarity|=" + num(worst_cop) + " (<1e-9)");
    gate.require(worst_axis < 1e-9, "ovoid max axis distance=" + num(worst_axis) + " (<1e-9)");
    gate.require(min_rank >= 2, "jacobian rank>=2 at all off-axis samples");

    const auto count_discriminating = [](const std::vector<double>& a, const std::vector<double>& b,
                                         const std::vector<double>& c) {
        const auto frac = [](const std::vector<double>& v) {
            int n = 0;
            for (double x : v) n += (std::fabs(x) > 1e-4);
            return static_cast<double>(n) / static_cast<double>(v.size());
        };
        return std::min({frac(a), frac(b), frac(c)});
    };

    {
        const ScalarField3 ell = triaxial_field();
        std::vector<double> dets, cops, axes;
        for (const Point3& p : triaxial_samples(1000, seed)) {
            const Vec3 nrm = normalized(ell.gradient(p));
            dets.push_back(revolution_det(ell, axis, p));
            cops.push_back(coplanarity_residual(p, nrm, f1, f2));
            axes.push_back(normal_axis_intersection(p, nrm, axis));
        }
        const double frac = count_discriminating(dets, cops, axes);
        gate.require(frac >= 0.9, "triaxial discrimination fraction=" + num(frac) + " (>=0.9)");
    }
    {
        // Generic samples only: on a circle of vanishing radius an azimuthal
        // bump has no first-order effect, so the polar caps cannot witness
        // the broken symmetry.
        const ScalarField3 bumped_field = perturbed_revolved_field(oval, 0.01, 3);
        std::vector<double> dets, cops, axes;
        int psi_count = 512;
        for (int attempt = 0; attempt < 8 && static_cast<int>(dets.size()) < 500; ++attempt) {
            dets.clear();
            cops.clear();
            axes.clear();
            const auto bumped = sample_perturbed_ovoid(oval, 0.01, 3, psi_count, 17);
            double rmax = 0.0;
            for (const SurfaceSample& s : bumped)
                rmax = std::max(rmax, std::hypot(s.point.y, s.point.z));
            for (const SurfaceSample& s : bumped) {
                if (std::hypot(s.point.y, s.point.z) < 0.25 * rmax) continue;
                dets.push_back(revolution_det(bumped_field, axis, s.point));
                cops.push_back(coplanarity_residual(s.point, s.normal, f1, f2));
                axes.push_back(normal_axis_intersection(s.point, s.normal, axis));
            }
            psi_count *= 2;
        }
        const double frac = count_discriminating(dets, cops, axes);
        gate.require(static_cast<int>(dets.size()) >= 500 && frac >= 0.9,
                     "perturbed discrimination fraction=" + num(frac) + " (>=0.9, " +
                         std::to_string(dets.size()) + " generic samples)");
    }
    return {7, "revolution-certificates", gate.ok, gate.detail, seconds_since(t0)};
}

CriterionResult functional_dependence(unsigned seed) {
    const auto t0 = Clock::now();
    Gate gate;
    const AxisLine axis = x_axis();
    const double revolved =
        dependence_check(revolved_field(RevolvedSurface{CartesianOval{1.0, 2.0, 1.5}}), axis, 2000, seed);
    gate.require(revolved < 1e-12, "revolved discrepancy=" + num(revolved) + " (<1e-12)");

    const ScalarField3 cylinder =
        make_field([](Point3 p) { return p.y * p.y + p.z * p.z - 1.0; });
    const double cyl = dependence_check(cylinder, axis, 2000, seed);
    gate.require(cyl < 1e-12, "cylinder discrepancy=" + num(cyl) + " (<1e-12)");

    const double tri = dependence_check(triaxial_field(), axis, 2000, seed);
    gate.require(tri > 1e-2, "triaxial discrepancy=" + num(tri) + " (>1e-2)");
    return {8, "functional-dependence", gate.ok, gate.detail, seconds_since(t0)};
}

CriterionResult oracle_agreement() {
    const auto t0 = Clock::now();
    Gate gate;
    const CartesianOval oval{1.0, 2.0, 1.5};
    const auto samples = off_axis_samples(oval, 1000);
    const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
    double worst_angle = 0.0, worst_rel = 0.0;
    for (const OvalSample& s : samples) {
        const double hx = h0 * std::max(1.0, std::fabs(s.point.x));
        const double hy = h0 * std::max(1.0, std::fabs(s.point.y));
        const Vec2 fd{(quartic_residual({s.point.x + hx, s.point.y}, oval) -
                       quartic_residual({s.point.x - hx, s.point.y}, oval)) /
                          (2.0 * hx),
                      (quartic_residual({s.point.x, s.point.y + hy}, oval) -
                       quartic_residual({s.point.x, s.point.y - hy}, oval)) /
                          (2.0 * hy)};
        worst_angle = std::max(worst_angle, line_angle(s.normal, fd));

        const double l1 = norm(s.point);
        const double l2 = distance(s.point, focus_far(oval));
        const double fx = s.point.x / l1 + oval.n * (s.point.x - oval.b) / l2;
        const double fy = s.point.y / l1 + oval.n * s.point.y / l2;
        const double implicit_slope = -fx / fy;
        const double slope = ode1_rhs(s.point.x, s.point.y, oval);
        worst_rel = std::max(worst_rel,
                             std::fabs(slope - implicit_slope) /
                                 std::max(1e-30, std::fabs(implicit_slope)));
    }
    gate.require(worst_angle < 1e-6, "max normal angle=" + num(worst_angle) + " rad (<1e-6)");
    gate.require(worst_rel < 1e-10, "max slope rel err=" + num(worst_rel) + " (<1e-10)");
    return {9, "oracle-agreement", gate.ok, gate.detail, seconds_since(t0)};
}

CriterionResult output_determinism(double elapsed_so_far) {
    const auto t0 = Clock::now();
    Gate gate;

    const auto render_all = [] {
        std::vector<std::string> outs;
        const CartesianOval oval{1.0, 2.0, 1.5};
        const auto samples = sample_curve(oval, 256);
        outs.push_back(samples_to_csv(samples));
        outs.push_back(samples_to_svg(samples, oval));

        const double psi0 = 0.5 * aperture_half_angle(oval);
        const double r = solve_radius(oval, psi0).value();
        const Trajectory traj =
            integrate_closed_loop(TwoFinite{oval}, {r * std::cos(psi0), r * std::sin(psi0)}, 1e-10);
        outs.push_back(trajectory_to_csv(traj));

        std::vector<TraceSample> rays;
        const FocusReport report = trace_fan({1.0, 1.5, 1.2}, 200, {-1.2, 1.2}, &rays);
        outs.push_back(report_to_json(report));
        outs.push_back(rays_to_csv(rays));

        outs.push_back(conic_to_json(conic_infinite_source(1.0, 2.0)));
        outs.push_back(conic_to_json(conic_infinite_source(1.0, -1.0)));
        outs.push_back(conic_to_json(conic_infinite_source(1.0, 1.0)));
        outs.push_back(conic_to_json(both_infinite_curve()));
        outs.push_back(oval_to_json(oval));

        const ScalarField3 field = revolved_field(RevolvedSurface{oval});
        const AxisLine axis = x_axis();
        std::vector<RevolvedRow> rows;
        for (const SurfaceSample& s : sample_revolved_oval(oval, 128, 9))
            rows.push_back({s.point, s.normal,
                            coplanarity_residual(s.point, s.normal, {0, 0, 0}, {oval.b, 0, 0}),
                            revolution_det(field, axis, s.point),
                            normal_axis_intersection(s.point, s.normal, axis)});
        outs.push_back(revolved_to_csv(rows));
        return outs;
    };

    const auto first = render_all();
    const auto second = render_all();
    bool identical = first.size() == second.size();
    for (std::size_t i = 0; identical && i < first.size(); ++i)
        identical = first[i] == second[i];
    gate.require(identical, "every emitter is byte-identical across runs");

    const double total = elapsed_so_far + seconds_since(t0);
    gate.require(total < 30.0, "total suite runtime=" + num(total) + "s (<30s)");
    return {10, "output-determinism", gate.ok, gate.detail, seconds_since(t0)};
}

}  // namespace

std::vector<CriterionResult> run_all(unsigned seed) {
    std::vector<CriterionResult> results;
    results.push_back(snell_ratio_constancy());
    results.push_back(conservation_two_finite());
    results.push_back(conservation_infinite_source());
    results.push_back(perfect_focus_fan());
    results.push_back(infinite_source_conic());
    results.push_back(degenerate_limits());
    results.push_back(revolution_certificates(seed));
    results.push_back(functional_dependence(seed));
    results.push_back(oracle_agreement());
    double elapsed = 0.0;
    for (const CriterionResult& r : results) elapsed += r.seconds;
    results.push_back(output_determinism(elapsed));
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CriterionResult& r) { return r.passed; });
}

}  // namespace ovalens::verify
