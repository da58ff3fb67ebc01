#include <cmath>

#include <benchmark/benchmark.h>

#include "ndwp/floquet.hpp"

namespace fl = ndwp::floquet;

static void BM_FloquetMatrix(benchmark::State& state) {
    const int half = static_cast<int>(state.range(0));
    const fl::FloquetBasis b{60 - half, 60 + half, -20, 20};
    for (auto _ : state) benchmark::DoNotOptimize(fl::build_floquet_matrix(b, 0.02 / std::pow(60.0, 4), 1.0 / 216000.0));
}
BENCHMARK(BM_FloquetMatrix)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_FloquetStatesNearTarget(benchmark::State& state) {
    const int kmax = static_cast<int>(state.range(0));
    const fl::FloquetBasis b{45, 75, -kmax, kmax};
    const double F = 0.02 / std::pow(60.0, 4), omega = 1.0 / 216000.0;
    const auto pred = fl::predict_wavepacket(60.0, 0.02, 0);
    fl::SolveOptions so;
    so.count = 6;
    for (auto _ : state) benchmark::DoNotOptimize(fl::floquet_states(b, F, omega, pred.quasienergy, so));
}
BENCHMARK(BM_FloquetStatesNearTarget)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);
