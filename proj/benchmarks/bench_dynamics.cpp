#include <cmath>

#include <benchmark/benchmark.h>

#include "ndwp/classical.hpp"
#include "ndwp/wavepacket.hpp"

static void BM_DrivenTrajectory(benchmark::State& state) {
    const double n0 = 60.0, omega = 1.0 / (n0 * n0 * n0);
    ndwp::classical::DriveSpec d;
    d.F = 0.01 / std::pow(n0, 4);
    d.omega = omega;
    const int periods = static_cast<int>(state.range(0));
    std::vector<double> times;
    for (int k = 1; k <= periods; ++k) times.push_back(k * 2.0 * M_PI / omega);
    const ndwp::units::PhaseSpacePoint start{{2.0 * n0 * n0}, {0.0}, 0.0};
    for (auto _ : state) benchmark::DoNotOptimize(ndwp::classical::integrate_driven(start, d, times));
}
BENCHMARK(BM_DrivenTrajectory)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_Autocorrelation(benchmark::State& state) {
    const auto wp = ndwp::wavepacket::gaussian_superposition(60.0, 1.8);
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ndwp::wavepacket::autocorrelation(wp, t));
        t += 1.0;
    }
}
BENCHMARK(BM_Autocorrelation);
