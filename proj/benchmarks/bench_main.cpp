#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "tfde/assembly.hpp"
#include "tfde/error_metrics.hpp"
#include "tfde/mittag_leffler.hpp"
#include "tfde/reference_solution.hpp"
#include "tfde/time_stepping.hpp"

namespace {

// Argument is x * 100.
void BM_MittagLeffler(benchmark::State& state) {
    const tfde::MittagLeffler ml(0.75);
    const double x = double(state.range(0)) / 100.0;
    for (auto _ : state) benchmark::DoNotOptimize(ml(x));
}
BENCHMARK(BM_MittagLeffler)->Arg(50)->Arg(1000)->Arg(10000);

void BM_AssembleStiffness(benchmark::State& state) {
    const tfde::StructuredMesh mesh(int(state.range(0)));
    const auto a = [](double x, double y) { return 1.0 + 0.5 * std::sin(x) * std::sin(y); };
    for (auto _ : state) benchmark::DoNotOptimize(tfde::assemble_stiffness(mesh, a));
}
BENCHMARK(BM_AssembleStiffness)->Arg(16)->Arg(64);

// Steps 1..N at M = 32; the history sum makes the cost quadratic in N.
void BM_Steps(benchmark::State& state) {
    const tfde::StructuredMesh mesh(32);
    const auto mass = tfde::assemble_mass(mesh);
    const auto stiff = tfde::assemble_laplacian(mesh);
    const auto N = std::size_t(state.range(0));
    const tfde::GradedTimeMesh tm(N, 1.6, 0.5);
    const tfde::FracWeights w(tm, 0.75);
    const auto u0 = tfde::l2_project(mesh, [](double x, double y) { return x * y * (1 - x) * (1 - y); });
    for (auto _ : state) {
        auto s = tfde::initial_state(u0.values);
        for (std::size_t n = 0; n < N; ++n) benchmark::DoNotOptimize(tfde::step(s, {mass, stiff, tm, w, {}}));
    }
}
BENCHMARK(BM_Steps)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_EvalGrid(benchmark::State& state) {
    const auto sol = tfde::make_series(tfde::InitialDatum::example1(), 0.75, int(state.range(0)));
    const auto lattice = tfde::fine_lattice(128);
    const tfde::GridEvaluator eval(sol, lattice.axis, lattice.axis);
    double t = 1e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval.evaluate(t));
        t *= 1.0001;
    }
}
BENCHMARK(BM_EvalGrid)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_LatticeError(benchmark::State& state) {
    const tfde::StructuredMesh mesh(int(state.range(0)));
    const auto lattice = tfde::fine_lattice(128);
    const tfde::LatticeInterpolator interp(mesh, lattice);
    const auto u = tfde::interpolate(mesh, [](double x, double y) { return x * y; });
    tfde::GridValues exact;
    exact.nx = exact.ny = lattice.axis.size();
    exact.values.assign(lattice.size(), 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(tfde::step_error(interp, u.values, exact));
}
BENCHMARK(BM_LatticeError)->Arg(8)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
