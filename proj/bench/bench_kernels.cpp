// Serial reference kernels against their OpenMP counterparts.
// Run with --benchmark_filter to pick a kernel; Arg is the worker count.

#include <benchmark/benchmark.h>

#include "chainent/config.hpp"
#include "chainent/correlation.hpp"
#include "chainent/dispersion.hpp"
#include "chainent/extremal.hpp"
#include "chainent/random.hpp"
#include "chainent/sampling.hpp"
#include "chainent/spectrum.hpp"

namespace {

using namespace chainent;

constexpr int kTorusSamples = 256;
constexpr int kTimeSamples = 256;

void BM_torus_serial(benchmark::State& state)
{
    const ChainConfig cfg = reference_quench();
    const std::vector<Probe> probes{Probe::entropy(), Probe::renyi(2)};
    for (auto _ : state) benchmark::DoNotOptimize(serial::sample_torus(cfg, probes, kTorusSamples, 1));
    state.SetItemsProcessed(state.iterations() * kTorusSamples);
}
BENCHMARK(BM_torus_serial)->Unit(benchmark::kMillisecond);

void BM_torus_parallel(benchmark::State& state)
{
    const ChainConfig cfg = reference_quench();
    const std::vector<Probe> probes{Probe::entropy(), Probe::renyi(2)};
    const int workers = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_torus(cfg, probes, kTorusSamples, 1, workers));
    state.SetItemsProcessed(state.iterations() * kTorusSamples);
}
BENCHMARK(BM_torus_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_time_series_serial(benchmark::State& state)
{
    const ChainConfig cfg = reference_quench();
    const double dt = default_time_step(build_dispersion(cfg));
    const double t0 = 10.0 * revival_time(cfg).value;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            serial::sample_time_series(cfg, Probe::entropy(), t0, kTimeSamples, dt));
    state.SetItemsProcessed(state.iterations() * kTimeSamples);
}
BENCHMARK(BM_time_series_serial)->Unit(benchmark::kMillisecond);

void BM_time_series_parallel(benchmark::State& state)
{
    const ChainConfig cfg = reference_quench();
    const double dt = default_time_step(build_dispersion(cfg));
    const double t0 = 10.0 * revival_time(cfg).value;
    const int workers = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            sample_time_series(cfg, Probe::entropy(), t0, kTimeSamples, dt, false, workers));
    state.SetItemsProcessed(state.iterations() * kTimeSamples);
}
BENCHMARK(BM_time_series_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_symplectic_reduced(benchmark::State& state)
{
    const ChainConfig cfg = reference_quench();
    const TorusModel model(cfg);
    const Eigen::MatrixXd g = model.correlation(uniform_phases(3, 0, model.N())).covariance();
    for (auto _ : state) benchmark::DoNotOptimize(symplectic_eigenvalues(g));
}
BENCHMARK(BM_symplectic_reduced)->Unit(benchmark::kMicrosecond);

void BM_symplectic_reference(benchmark::State& state)
{
    const ChainConfig cfg = reference_quench();
    const TorusModel model(cfg);
    const Eigen::MatrixXd g = model.correlation(uniform_phases(3, 0, model.N())).covariance();
    for (auto _ : state) benchmark::DoNotOptimize(symplectic_eigenvalues_reference(g));
}
BENCHMARK(BM_symplectic_reference)->Unit(benchmark::kMicrosecond);

void BM_coordinate_extrema(benchmark::State& state)
{
    const ChainConfig cfg = reference_quench();
    const TorusModel model(cfg);
    const auto phi = uniform_phases(17, 1, model.N());
    const Probe probe = state.range(0) == 1 ? Probe::entropy() : Probe::renyi(2);
    for (auto _ : state) benchmark::DoNotOptimize(coordinate_extrema(model, probe, phi));
}
BENCHMARK(BM_coordinate_extrema)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace

BENCHMARK_MAIN();
