#include <gtest/gtest.h>

#include <cmath>

#include "ndwp/errors.hpp"
#include "ndwp/floquet.hpp"
#include "ndwp/kepler.hpp"

using namespace ndwp;

TEST(Floquet, SemiclassicalDipoleIsFourierCoefficient) {
    EXPECT_NEAR(floquet::dipole_matrix_1d(60, 61, floquet::DipoleMode::Semiclassical),
                kepler::fourier_dipole_1d(60.5, 1), 1e-9);
    EXPECT_NEAR(floquet::dipole_matrix_1d(60, 60, floquet::DipoleMode::Semiclassical), 1.5 * 3600.0, 1e-9);
}

TEST(Floquet, ExactDipoleCloseToSemiclassicalAtLargeN) {
    for (int d : {1, 2, 3}) {
        const double ex = floquet::dipole_matrix_1d(60, 60 + d, floquet::DipoleMode::Exact);
        const double sc = floquet::dipole_matrix_1d(60, 60 + d, floquet::DipoleMode::Semiclassical);
        EXPECT_NEAR(ex / sc, 1.0, 0.02) << d;
    }
    EXPECT_NEAR(floquet::dipole_matrix_1d(1, 1, floquet::DipoleMode::Exact), 1.5, 1e-10);
    EXPECT_NEAR(floquet::dipole_matrix_1d(40, 43, floquet::DipoleMode::Exact),
                floquet::dipole_matrix_1d(43, 40, floquet::DipoleMode::Exact), 1e-10);
}

TEST(Floquet, ZeroFieldSpectrumIsShiftedBohrLevels) {
    const floquet::FloquetBasis b{10, 14, -2, 2};
    const double omega = 1e-3;
    auto all = floquet::floquet_states_all(b, 0.0, omega);
    ASSERT_EQ(static_cast<int>(all.size()), b.size());
    std::vector<double> ref;
    for (int k = -2; k <= 2; ++k)
        for (int n = 10; n <= 14; ++n) ref.push_back(-0.5 / (n * n) - k * omega);
    std::sort(ref.begin(), ref.end());
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(all[i].energy, ref[i], 1e-14);
}

TEST(Floquet, MatrixStructure) {
    const floquet::FloquetBasis b{20, 24, -1, 1};
    const auto A = floquet::build_floquet_matrix(b, 1e-6, 1e-4);
    EXPECT_EQ(A.size(), b.size());
    EXPECT_NEAR(A.get(b.index(20, 1), b.index(20, 1)), -0.5 / 400.0 - 1e-4, 1e-16);
    EXPECT_NEAR(A.get(b.index(20, 0), b.index(21, 1)), 0.5e-6 * floquet::dipole_matrix_1d(20, 21, floquet::DipoleMode::Semiclassical), 1e-18);
    EXPECT_EQ(A.get(b.index(20, -1), b.index(21, 1)), 0.0);
}

TEST(Floquet, ReplicasShareQuasienergy) {
    const floquet::FloquetBasis b{25, 35, -6, 6};
    const double omega = 1.0 / (30.0 * 30.0 * 30.0);
    const double F = 0.02 / std::pow(30.0, 4);
    const auto all = floquet::floquet_states_all(b, F, omega);
    for (const auto& s : all) {
        EXPECT_GE(s.quasienergy, 0.0);
        EXPECT_LT(s.quasienergy, omega);
        EXPECT_NEAR(s.norm(), 1.0, 1e-10);
    }
    EXPECT_NEAR(floquet::reduce_quasienergy(-2.5 * omega, omega), 0.5 * omega, 1e-18);
}

TEST(Floquet, LanczosMatchesDenseRoute) {
    const floquet::FloquetBasis b{40, 60, -10, 10};
    const double omega = 1.0 / 125000.0, F = 0.02 / std::pow(50.0, 4);
    const double target = -0.5 / 2500.0 + 0.3 * omega;
    floquet::SolveOptions dense, sparse;
    dense.count = sparse.count = 5;
    sparse.dense_limit = 10;
    const auto a = floquet::floquet_states(b, F, omega, target, dense);
    const auto c = floquet::floquet_states(b, F, omega, target, sparse);
    ASSERT_EQ(a.size(), c.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i].energy, c[i].energy, 1e-14);
}

TEST(Floquet, HellmannFeynmanSlope) {
    const floquet::FloquetBasis b{40, 60, -10, 10};
    const double omega = 1.0 / 125000.0, F = 0.02 / std::pow(50.0, 4), dF = 1e-4 * F;
    const double target = -0.5 / 2500.0;
    floquet::SolveOptions o;
    o.count = 1;
    const auto s0 = floquet::floquet_states(b, F, omega, target, o)[0];
    const auto sp = floquet::floquet_states(b, F + dF, omega, s0.energy, o)[0];
    const auto sm = floquet::floquet_states(b, F - dF, omega, s0.energy, o)[0];
    EXPECT_NEAR(s0.slope, (sp.energy - sm.energy) / (2 * dF), 1e-4 * std::abs(s0.slope) + 1e-8);
}

TEST(Floquet, WavepacketIdentifiedInsideIsland) {
    const double n0 = 40.0, F0 = 0.03, omega = 1.0 / (n0 * n0 * n0), F = F0 / std::pow(n0, 4);
    const auto pred = floquet::predict_wavepacket(n0, F0, 0);
    floquet::SolveOptions so;
    so.count = 8;
    const auto states = floquet::floquet_states({20, 60, -25, 25}, F, omega, pred.quasienergy, so);
    floquet::IdentifyOptions io;
    io.predicted_slope = pred.slope;
    io.omega_harm = pred.omega_harm;
    io.band = std::make_pair(pred.n_center, pred.half_width);
    const auto id = floquet::identify_wavepacket(states, pred.quasienergy, F, omega, io);
    EXPECT_GT(id.state.island_weight(n0, pred.half_width), 0.9);
    EXPECT_LT(std::abs(id.state.mean_k()), 3.0);
    double d = std::fmod(std::abs(id.state.energy - pred.quasienergy), omega);
    d = std::min(d, omega - d);
    EXPECT_LT(d / pred.omega_harm, 0.1);
}

TEST(Floquet, InvalidBasis) {
    EXPECT_THROW(floquet::build_floquet_matrix({10, 5, 0, 0}, 0.0, 1.0), DomainError);
    EXPECT_THROW(floquet::dipole_mode_from_string("bogus"), DomainError);
    EXPECT_EQ(floquet::dipole_mode_from_string(floquet::to_string(floquet::DipoleMode::Exact)), floquet::DipoleMode::Exact);
}
