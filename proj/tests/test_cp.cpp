#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ndwp/cp.hpp"
#include "ndwp/errors.hpp"

using namespace ndwp;

namespace {
constexpr double kOmega60 = 1.0 / 216000.0;
}

TEST(Cp, FixedPointBalancesForces) {
    for (double q : {0.5, 0.9, 0.95, 0.999}) {
        const double F = cp::field_from_q(q, kOmega60);
        const auto fps = cp::cp_fixed_points(F, kOmega60);
        ASSERT_FALSE(fps.empty());
        const auto& fp = fps.front();
        EXPECT_NEAR(fp.q, q, 1e-9);
        // Rotating frame: omega^2 x - x/|x|^3 = F along the field axis.
        const double x = fp.x_eq;
        EXPECT_NEAR((kOmega60 * kOmega60 * x - x / std::pow(std::abs(x), 3) - F) / F, 0.0, 1e-8);
        EXPECT_NEAR(fp.E_eq / cp::energy_from_q(q, kOmega60), 1.0, 1e-9);
    }
}

TEST(Cp, ScaledFieldIsMonotoneInQ) {
    double prev = 1e300;
    for (double q = 0.05; q <= 1.0; q += 0.05) {
        const double F0 = cp::scaled_field_from_q(q);
        EXPECT_LT(F0, prev);
        EXPECT_NEAR(cp::q_from_scaled_field(F0), q, 1e-10);
        prev = F0;
    }
    EXPECT_DOUBLE_EQ(cp::scaled_field_from_q(1.0), 0.0);
    EXPECT_THROW(cp::scaled_field_from_q(0.0), DomainError);
}

TEST(Cp, RegionRulesAgreeWithLinearisation) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-4.0, 3.0);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        const cp::StabilityParams p{u(rng), u(rng), 1.0};
        // Skip points within a hair of a boundary.
        const double d = (p.a - p.b) * (p.a - p.b) + 8.0 * (p.a + p.b);
        if (std::abs(p.a - 1.0) < 1e-3 || std::abs(p.b - 1.0) < 1e-3 || std::abs(p.a + 3.0) < 1e-3 ||
            std::abs(p.b + 3.0) < 1e-3 || std::abs(d) < 1e-3)
            continue;
        EXPECT_EQ(cp::oscillator_stability(p).stable, cp::linearized_stable(p)) << p.a << " " << p.b;
        ++checked;
    }
    EXPECT_GT(checked, 950);
}

TEST(Cp, StabilityFlipAtEightNinths) {
    const double q = 8.0 / 9.0;
    EXPECT_TRUE(cp::oscillator_stability({-2.0 * q, q, 1.0}).stable);
    EXPECT_FALSE(cp::oscillator_stability({-2.0 * (q - 1e-6), q - 1e-6, 1.0}).stable);
    EXPECT_THROW(cp::normal_modes(q - 1e-6, 1.0), DomainError);
    EXPECT_NO_THROW(cp::normal_modes(q, 1.0));
}

TEST(Cp, NormalModeLimits) {
    const auto m1 = cp::normal_modes(1.0, 2.0);
    EXPECT_NEAR(m1.omega_plus, 2.0, 1e-12);
    EXPECT_NEAR(m1.omega_minus, 0.0, 1e-12);
    EXPECT_NEAR(m1.omega_z, 2.0, 1e-12);
    const double q12 = cp::one_two_resonance_q();
    const auto m = cp::normal_modes(q12, 1.0);
    EXPECT_NEAR(m.omega_plus, 2.0 * m.omega_minus, 1e-12);
    EXPECT_NEAR(q12, 0.93712, 1e-5);
}

TEST(Cp, HarmonicLadder) {
    const double q = 0.95;
    const auto fp = cp::cp_fixed_points(cp::field_from_q(q, kOmega60), kOmega60).front();
    ASSERT_TRUE(fp.stable);
    const auto m = cp::normal_modes(q, kOmega60);
    const double e0 = cp::harmonic_energies_cp(0, 0, 0, fp);
    EXPECT_NEAR(cp::harmonic_energies_cp(1, 0, 0, fp) - e0, m.omega_plus, 1e-18);
    EXPECT_NEAR(cp::harmonic_energies_cp(0, 1, 0, fp) - e0, -m.omega_minus, 1e-18);
    EXPECT_NEAR(cp::harmonic_energies_cp(0, 0, 1, fp, 3) - e0, m.omega_z, 1e-18);
    EXPECT_NEAR(cp::harmonic_energies_cp(0, 0, 0, fp, 2), e0 - 0.5 * m.omega_z, 1e-18);
}

TEST(Cp, ZeroVelocitySurfaceMaximumIsStable) {
    const auto r = cp::zero_velocity_demo(0.95, kOmega60);
    EXPECT_TRUE(r.zvs_maximum);
    EXPECT_TRUE(r.stable);
}

TEST(Cp, MagneticField) {
    const double omega = kOmega60;
    // Field-free with omega_c > omega: no equilibrium.
    EXPECT_TRUE(cp::cp_fixed_points(0.0, omega, 2.0 * omega).empty());
    EXPECT_THROW(cp::ionization_threshold_magnetic(1e-9, omega, 0.5 * omega), DomainError);
    EXPECT_LT(cp::ionization_threshold_magnetic(1e-9, omega, 2.0 * omega), 0.0);
    // With a weak magnetic field the equilibrium still balances forces.
    const double wc = 0.3 * omega, F = 0.02 / std::pow(60.0, 4);
    const auto fps = cp::cp_fixed_points(F, omega, wc);
    ASSERT_FALSE(fps.empty());
    const double x = fps.front().x_eq, K = omega * (omega - wc);
    EXPECT_NEAR((K * x - x / std::pow(std::abs(x), 3) - F) / F, 0.0, 1e-8);
}

TEST(Cp, PendulumVariants) {
    const auto p3 = cp::cp_pendulum(60.0, 0.01, 3);
    const auto p2 = cp::cp_pendulum(60.0, 0.01, 2);
    EXPECT_DOUBLE_EQ(p3.I_s, 60.0);
    EXPECT_DOUBLE_EQ(p2.I_s, 60.5);
    EXPECT_DOUBLE_EQ(p2.n0(), 60.0);
    EXPECT_NEAR(p3.omega, 1.0 / 216000.0, 1e-18);
    EXPECT_THROW(cp::cp_pendulum(60.0, 0.01, 4), DomainError);
}

TEST(Cp, StabilityDiagramShape) {
    const auto cells = cp::stability_diagram({0.01, 0.05, 0.2}, {0.0, 0.5}, 60.0);
    ASSERT_EQ(cells.size(), 6u);
    for (const auto& c : cells)
        if (c.omega_c_ratio == 0.0 && c.F0 == 0.01) EXPECT_TRUE(c.exists && c.region > 0);
}
