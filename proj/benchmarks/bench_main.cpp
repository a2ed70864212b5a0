#include <benchmark/benchmark.h>

#include "pbs/film.hpp"
#include "pbs/optics.hpp"
#include "pbs/quantum.hpp"

namespace {

void BM_FilmMatrix(benchmark::State& state) {
    const pbs::FilmModel film = pbs::FilmModel::calibrated();
    double qx = 1e-4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pbs::film_matrix(film, {qx, 2e-4}, 797.0));
        qx += 1e-12;
    }
}
BENCHMARK(BM_FilmMatrix);

void BM_KernelBuild(benchmark::State& state) {
    pbs::SetupParams setup;
    const pbs::QuadratureOptions q{static_cast<int>(state.range(0)), 3, 3};
    for (auto _ : state) {
        pbs::TelescopeKernel kernel(setup, q);
        benchmark::DoNotOptimize(kernel.rule().size());
    }
}
BENCHMARK(BM_KernelBuild)->Arg(101)->Arg(201)->Unit(benchmark::kMillisecond);

void BM_KernelPoint(benchmark::State& state) {
    const pbs::TelescopeKernel kernel(pbs::SetupParams{}, {201, 3, 3});
    for (auto _ : state) benchmark::DoNotOptimize(kernel({1e-6, 2e-6}));
}
BENCHMARK(BM_KernelPoint)->Unit(benchmark::kMillisecond);

void BM_OnGrid(benchmark::State& state) {
    const pbs::SetupParams setup;
    const pbs::TelescopeKernel kernel(setup, {201, 3, 3});
    const auto axis = pbs::detector_axis(setup, {static_cast<int>(state.range(0)), std::nullopt});
    for (auto _ : state) benchmark::DoNotOptimize(kernel.on_grid(axis));
}
BENCHMARK(BM_OnGrid)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);

void BM_Visibility(benchmark::State& state) {
    const pbs::SetupParams setup;
    const pbs::TelescopeKernel kernel(setup, {101, 3, 3});
    const auto map = pbs::field_map(0.25 * 3.141592653589793 + 1.5707963267948966, {101, std::nullopt}, kernel);
    for (auto _ : state) benchmark::DoNotOptimize(pbs::visibility(0.25 * 3.141592653589793, map));
}
BENCHMARK(BM_Visibility)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
