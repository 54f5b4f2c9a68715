#include <benchmark/benchmark.h>

#include <cmath>

#include "ovalens/ovalens.hpp"

namespace {

using namespace ovalens;

void BM_SampleCurve(benchmark::State& state) {
    const CartesianOval oval{1.0, 2.0, 4.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_curve(oval, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SampleCurve)->Arg(256)->Arg(4096);

void BM_ClosedLoopIntegration(benchmark::State& state) {
    const CartesianOval oval{1.0, 2.0, 1.5};
    const double psi = 0.5 * aperture_half_angle(oval);
    const double r = solve_radius(oval, psi).value();
    const Point2 start{r * std::cos(psi), r * std::sin(psi)};
    const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(integrate_closed_loop(TwoFinite{oval}, start, tol));
}
BENCHMARK(BM_ClosedLoopIntegration)->Arg(6)->Arg(10);

void BM_TraceFan(benchmark::State& state) {
    const CartesianOval oval{1.0, 1.5, 1.2};
    const double half = 0.9 * aperture_half_angle(oval);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            trace_fan(oval, static_cast<int>(state.range(0)), {-half, half}));
}
BENCHMARK(BM_TraceFan)->Arg(128)->Arg(1024);

void BM_RevolutionCertificates(benchmark::State& state) {
    const CartesianOval oval{1.0, 2.0, 1.5};
    const ScalarField3 field = revolved_field(RevolvedSurface{oval});
    const AxisLine axis = x_axis();
    const auto samples = sample_revolved_oval(oval, 256, 9);
    for (auto _ : state) {
        double acc = 0.0;
        for (const SurfaceSample& s : samples) {
            acc += revolution_det(field, axis, s.point);
            acc += coplanarity_residual(s.point, s.normal, {0, 0, 0}, {oval.b, 0, 0});
            acc += normal_axis_intersection(s.point, s.normal, axis);
        }
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(samples.size()));
}
BENCHMARK(BM_RevolutionCertificates);

}  // namespace

BENCHMARK_MAIN();
