#include <benchmark/benchmark.h>

#include "ndwp/special.hpp"

static void BM_BesselJ(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    double x = 0.5 * m + 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ndwp::special::bessel_j(m, x));
        x += 1e-9;
    }
}
BENCHMARK(BM_BesselJ)->Arg(1)->Arg(10)->Arg(100);

static void BM_BesselSequence(benchmark::State& state) {
    const int mmax = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ndwp::special::bessel_j_sequence(mmax, 0.8 * mmax));
    state.SetComplexityN(mmax);
}
BENCHMARK(BM_BesselSequence)->RangeMultiplier(4)->Range(16, 1024)->Complexity();
