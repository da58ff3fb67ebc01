#include <benchmark/benchmark.h>

#include "ndwp/mathieu.hpp"

static void BM_MathieuValues(benchmark::State& state) {
    const double q = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ndwp::mathieu::mathieu_char_values(0.5, q, 21));
}
BENCHMARK(BM_MathieuValues)->Arg(1)->Arg(10)->Arg(100)->Arg(1000);
