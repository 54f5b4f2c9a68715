// ovalens: sample, integrate, trace, and certify perfect-lens geometry.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ovalens/ovalens.hpp"

namespace {

using namespace ovalens;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + out_path);
    file.write(text.data(), static_cast<std::streamsize>(text.size()));
}

Point2 loop_start(const CartesianOval& oval) {
    const double psi = 0.5 * aperture_half_angle(oval);
    const double r = solve_radius(oval, psi).value();
    return {r * std::cos(psi), r * std::sin(psi)};
}

struct SampleArgs {
    double b = 1.0, n = 1.5, c = 2.0;
    int count = 256;
    std::string format = "csv";
    std::string oval_json;
    std::string out;
};

CartesianOval load_oval_json(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open oval file: " + path);
    std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    return oval_from_json(text);
}

int cmd_sample(const SampleArgs& args) {
    const CartesianOval oval = validate(
        args.oval_json.empty() ? CartesianOval{args.b, args.n, args.c}
                               : load_oval_json(args.oval_json));
    const auto samples = sample_curve(oval, args.count);
    write_output(args.format == "svg" ? samples_to_svg(samples, oval) : samples_to_csv(samples),
                 args.out);
    return 0;
}

struct OdeArgs {
    double b = 1.0, n = 1.5, c = 2.0;
    double tol = 1e-10;
    double max_drift = 1e-8;
    std::optional<double> arc_span;
    std::string out;
};

int cmd_ode(const OdeArgs& args) {
    const CartesianOval oval = validate({args.b, args.n, args.c});
    const Point2 start = loop_start(oval);
    const Trajectory traj = args.arc_span
                                ? integrate(TwoFinite{oval}, start, *args.arc_span, args.tol)
                                : integrate_closed_loop(TwoFinite{oval}, start, args.tol);
    write_output(trajectory_to_csv(traj), args.out);
    std::fprintf(stderr, "max_drift=%s\n", format_g17(traj.max_drift).c_str());
    return traj.max_drift <= args.max_drift ? 0 : 1;
}

struct TraceArgs {
    double b = 1.0, n = 1.5, c = 2.0;
    int rays = 1000;
    std::optional<double> psi_min, psi_max;
    std::string out;
    std::string rays_csv;
};

int cmd_trace(const TraceArgs& args) {
    const CartesianOval oval = validate({args.b, args.n, args.c});
    const double half = 0.9 * aperture_half_angle(oval);
    const double lo = args.psi_min.value_or(-half);
    const double hi = args.psi_max.value_or(half);
    std::vector<TraceSample> rows;
    const FocusReport report =
        trace_fan(oval, args.rays, {lo, hi}, args.rays_csv.empty() ? nullptr : &rows);
    write_output(report_to_json(report), args.out);
    if (!args.rays_csv.empty()) write_output(rays_to_csv(rows), args.rays_csv);
    return 0;
}

struct ConicArgs {
    double b = 1.0, n = 2.0;
    std::optional<double> c;
    std::string mode = "auto";
    std::string out;
};

int cmd_conic(const ConicArgs& args) {
    ConicSpec conic;
    if (args.mode == "auto") {
        conic = conic_infinite_source(args.b, args.n);
    } else if (args.mode == "unity") {
        if (!args.c) throw Error(ErrorKind::InvalidParameter, "unity mode requires --c");
        conic = conic_n_unity(args.b, *args.c, args.n >= 0.0 ? 1 : -1);
    } else {
        conic = both_infinite_curve();
    }
    write_output(conic_to_json(conic), args.out);
    return 0;
}

struct RevolveArgs {
    double b = 1.0, n = 2.0, c = 1.5;
    int samples = 1000;
    double perturb = 0.0;
    int mode_k = 3;
    std::string out;
};

int cmd_revolve(const RevolveArgs& args) {
    const CartesianOval oval = validate({args.b, args.n, args.c});
    int psi_count = 8 * args.samples / 17 + 32;
    std::vector<SurfaceSample> samples;
    for (int attempt = 0; attempt < 10; ++attempt) {
        samples = args.perturb != 0.0
                      ? sample_perturbed_ovoid(oval, args.perturb, args.mode_k, psi_count, 17)
                      : sample_revolved_oval(oval, psi_count, 17);
        if (static_cast<int>(samples.size()) >= args.samples) break;
        psi_count *= 2;
    }

    const ScalarField3 field = args.perturb != 0.0
                                   ? perturbed_revolved_field(oval, args.perturb, args.mode_k)
                                   : revolved_field(RevolvedSurface{oval});
    const AxisLine axis = x_axis();
    const Point3 f1{0.0, 0.0, 0.0};
    const Point3 f2{oval.b, 0.0, 0.0};
    std::vector<RevolvedRow> rows;
    rows.reserve(samples.size());
    for (const SurfaceSample& s : samples)
        rows.push_back({s.point, s.normal, coplanarity_residual(s.point, s.normal, f1, f2),
                        revolution_det(field, axis, s.point),
                        normal_axis_intersection(s.point, s.normal, axis)});
    write_output(revolved_to_csv(rows), args.out);
    return 0;
}

int cmd_verify(unsigned seed) {
    const auto results = verify::run_all(seed);
    std::printf("%-4s %-3s %-30s %s\n", "", "#", "criterion", "detail");
    for (const auto& r : results)
        std::printf("%-4s %-3d %-30s %s (%.2fs)\n", r.passed ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str(), r.seconds);
    if (!verify::all_passed(results)) {
        for (const auto& r : results)
            if (!r.passed) std::fprintf(stderr, "failed criterion: %s\n", r.name.c_str());
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cartesian-oval lens geometry: sampling, integration, tracing, certification"};
    app.require_subcommand(1);

    SampleArgs sample_args;
    CLI::App* sample = app.add_subcommand("sample", "sample the lens curve as CSV or SVG");
    auto* sb = sample->add_option("--b", sample_args.b, "focal separation");
    auto* sn = sample->add_option("--n", sample_args.n, "index ratio");
    auto* sc = sample->add_option("--c", sample_args.c, "weighted path constant");
    sample->add_option("--oval", sample_args.oval_json, "JSON file {\"b\":..,\"n\":..,\"c\":..}")
        ->excludes(sb)
        ->excludes(sn)
        ->excludes(sc);
    sb->needs(sn)->needs(sc);
    sample->add_option("--count", sample_args.count, "polar grid size")
        ->check(CLI::Range(2, 10000000));
    sample->add_option("--format", sample_args.format, "csv or svg")
        ->check(CLI::IsMember({"csv", "svg"}));
    sample->add_option("--out", sample_args.out, "output path (default stdout)");

    OdeArgs ode_args;
    CLI::App* ode = app.add_subcommand("ode", "integrate the curve and gate on conservation drift");
    ode->add_option("--b", ode_args.b)->required();
    ode->add_option("--n", ode_args.n)->required();
    ode->add_option("--c", ode_args.c)->required();
    ode->add_option("--tol", ode_args.tol, "integrator tolerance")->check(CLI::PositiveNumber);
    ode->add_option("--max-drift", ode_args.max_drift, "drift gate")->check(CLI::PositiveNumber);
    ode->add_option("--arc-span", ode_args.arc_span, "arc length (default: one closed loop)")
        ->check(CLI::NonNegativeNumber);
    ode->add_option("--out", ode_args.out);

    TraceArgs trace_args;
    CLI::App* trace = app.add_subcommand("trace", "trace a ray fan and report focus deviations");
    trace->add_option("--b", trace_args.b)->required();
    trace->add_option("--n", trace_args.n)->required();
    trace->add_option("--c", trace_args.c)->required();
    trace->add_option("--rays", trace_args.rays)->check(CLI::Range(1, 10000000));
    trace->add_option("--psi-min", trace_args.psi_min, "fan start angle (default: -0.9*aperture)");
    trace->add_option("--psi-max", trace_args.psi_max, "fan end angle");
    trace->add_option("--out", trace_args.out, "report JSON path (default stdout)");
    trace->add_option("--rays-csv", trace_args.rays_csv, "optional per-ray CSV path");

    ConicArgs conic_args;
    CLI::App* conic = app.add_subcommand("conic", "emit the limiting conic as JSON");
    conic->add_option("--b", conic_args.b)->required();
    conic->add_option("--n", conic_args.n)->required();
    conic->add_option("--c", conic_args.c, "path constant (unity mode only)");
    conic->add_option("--mode", conic_args.mode, "auto, unity, or flat")
        ->check(CLI::IsMember({"auto", "unity", "flat"}));
    conic->add_option("--out", conic_args.out);

    RevolveArgs revolve_args;
    CLI::App* revolve =
        app.add_subcommand("revolve", "sample the revolved surface with rotation certificates");
    revolve->add_option("--b", revolve_args.b)->required();
    revolve->add_option("--n", revolve_args.n)->required();
    revolve->add_option("--c", revolve_args.c)->required();
    revolve->add_option("--samples", revolve_args.samples)->check(CLI::Range(1, 10000000));
    revolve->add_option("--perturb", revolve_args.perturb, "radial bump amplitude");
    revolve->add_option("--mode-k", revolve_args.mode_k, "radial bump azimuthal mode")
        ->check(CLI::Range(1, 64));
    revolve->add_option("--out", revolve_args.out);

    unsigned seed = 0;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the full certification suite");
    verify_cmd->add_option("--seed", seed, "seed for randomized sampling");

    try {
        app.parse(argc, argv);
        if (sample->parsed()) {
            if (sample_args.oval_json.empty() && sb->count() == 0)
                throw CLI::RequiredError("sample: pass --b/--n/--c or --oval");
            return cmd_sample(sample_args);
        }
        if (ode->parsed()) return cmd_ode(ode_args);
        if (trace->parsed()) return cmd_trace(trace_args);
        if (conic->parsed()) return cmd_conic(conic_args);
        if (revolve->parsed()) return cmd_revolve(revolve_args);
        if (verify_cmd->parsed()) return cmd_verify(seed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    } catch (const ovalens::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
