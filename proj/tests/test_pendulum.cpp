#include <gtest/gtest.h>

#include <cmath>

#include "ndwp/errors.hpp"
#include "ndwp/mathieu.hpp"
#include "ndwp/pendulum.hpp"
#include "ndwp/units.hpp"

using namespace ndwp;

TEST(Pendulum, HydrogenResonanceFromGenericBuilder) {
    const auto sys = pendulum::hydrogen_system(1);
    const double omega = 1.0 / 216000.0;
    const auto p = pendulum::build_pendulum(sys, omega, 1, 0.01 / std::pow(60.0, 4));
    EXPECT_NEAR(p.I_s, 60.0, 1e-9);
    const auto h = pendulum::hydrogen_pendulum(60.0, 0.01, 1);
    EXPECT_NEAR(p.Vs, h.Vs, 1e-9);
    EXPECT_NEAR(p.H0pp, h.H0pp, 1e-20);
    const auto p2 = pendulum::build_pendulum(pendulum::hydrogen_system(2), 2.0 * omega, 2, 0.0);
    EXPECT_NEAR(p2.I_s, 60.0, 1e-9);
}

TEST(Pendulum, ResonanceNotInBracket) {
    auto sys = pendulum::hydrogen_system(1);
    sys.I_lo = 100.0;
    sys.I_hi = 200.0;
    EXPECT_THROW(pendulum::build_pendulum(sys, 1.0 / 216000.0, 1, 0.0), NotFoundError);
}

TEST(Pendulum, IslandWidthValue) {
    const auto p = pendulum::hydrogen_pendulum(60.0, 0.01, 1);
    EXPECT_NEAR(pendulum::predicted_width(p), 7.90, 0.01);
    // Width grows as sqrt(F0).
    const auto p4 = pendulum::hydrogen_pendulum(60.0, 0.04, 1);
    EXPECT_NEAR(pendulum::predicted_width(p4) / pendulum::predicted_width(p), 2.0, 1e-12);
}

TEST(Pendulum, AreaQuadratureMatchesClosedForm) {
    for (int s : {1, 2, 3}) {
        auto p = pendulum::hydrogen_pendulum(40.0, 0.02, s);
        const auto g = pendulum::island_geometry(p);
        EXPECT_NEAR(pendulum::separatrix_area_numeric(p) / g.area, 1.0, 1e-10) << s;
        EXPECT_NEAR(g.n_trapped_estimate, g.area / kTwoPi * s / s, 1e-12);
    }
}

TEST(Pendulum, SeparatrixMembership) {
    const auto p = pendulum::hydrogen_pendulum(60.0, 0.01, 1);
    const double half = 0.5 * pendulum::predicted_width(p);
    // Stable point at theta_hat = pi for hydrogen.
    EXPECT_TRUE(pendulum::inside_separatrix(p, 60.0, kPi));
    EXPECT_TRUE(pendulum::inside_separatrix(p, 60.0 + 0.99 * half, kPi));
    EXPECT_FALSE(pendulum::inside_separatrix(p, 60.0 + 1.01 * half, kPi));
    EXPECT_FALSE(pendulum::inside_separatrix(p, 60.0, 0.0));
}

TEST(Pendulum, MathieuParameters) {
    const auto p = pendulum::hydrogen_pendulum(60.0, 0.03, 1);
    // q = 4 lambda V1 / H0'' = (4/3) F0 n0^2 J1'(1) in magnitude.
    EXPECT_NEAR(std::abs(pendulum::mathieu_q(p)), 4.0 / 3.0 * 0.03 * 3600.0 * 0.3251471008130417, 1e-9);
    EXPECT_DOUBLE_EQ(pendulum::mathieu_nu(p, 0), 0.0);
    auto half = p;
    half.I_s = 60.5;
    EXPECT_DOUBLE_EQ(pendulum::mathieu_nu(half, 0), -1.0);
    EXPECT_DOUBLE_EQ(pendulum::mathieu_nu(pendulum::hydrogen_pendulum(61.0, 0.03, 2), 0), -1.0);
    EXPECT_DOUBLE_EQ(pendulum::mathieu_nu(pendulum::hydrogen_pendulum(61.0, 0.03, 2), 1), 0.0);
}

TEST(Pendulum, HarmonicLimitOfMathieuRoute) {
    // Deep in the island the Mathieu levels are evenly spaced by omega_harm.
    const auto p = pendulum::hydrogen_pendulum(60.0, 0.04, 1);
    const double wh = pendulum::harmonic_frequency(p);
    const double e0 = mathieu::quasienergy_from_mathieu(p, 0, 0);
    const double e1 = mathieu::quasienergy_from_mathieu(p, 1, 0);
    EXPECT_NEAR(std::abs(e1 - e0) / wh, 1.0, 0.1);
}

TEST(Pendulum, EbkLibrationalLevels) {
    const double q = 15.0;
    // Ground level accurate to 2 percent of the level spacing, first excited to 10 percent.
    const double spacing = 4.0 * std::sqrt(q);
    for (int k : {0, 1}) {
        const auto v = pendulum::ebk_char_value(0.0, q, k);
        EXPECT_TRUE(v.librational);
        const double exact = mathieu::mathieu_a(0.0, q, k);
        EXPECT_LT(std::abs(v.a - exact) / spacing, k == 0 ? 0.02 : 0.10) << k;
    }
}

TEST(Pendulum, EbkRotationalLevelsHighAboveBarrier) {
    const double q = 2.0;
    for (double nu : {0.0, 0.5}) {
        const auto v = pendulum::ebk_char_value(nu, q, 8);
        EXPECT_FALSE(v.librational);
        const double exact = mathieu::mathieu_a(nu, q, 8);
        EXPECT_NEAR(v.a / exact, 1.0, 0.01);
    }
    EXPECT_DOUBLE_EQ(pendulum::ebk_char_value(0.5, 0.0, 0).a, 0.25);
}

TEST(Pendulum, EbkLevelsWarnNearSeparatrix) {
    const auto p = pendulum::hydrogen_pendulum(60.0, 0.01, 1);
    EXPECT_EQ(pendulum::ebk_levels(p, 0.0, 12).size(), 12u);
    EXPECT_THROW(pendulum::ebk_levels(p, 0.0, 0), DomainError);
    int warned = 0;
    for (double F0 = 0.002; F0 < 0.03; F0 += 0.0005) {
        const auto q = pendulum::hydrogen_pendulum(60.0, F0, 1);
        const auto lv = pendulum::ebk_levels(q, 0.0, 10);
        for (const auto& l : lv) {
            const auto v = pendulum::ebk_char_value(0.0, pendulum::mathieu_q(q), l.kappa);
            EXPECT_EQ(!l.warning.empty(), v.near_separatrix);
            warned += !l.warning.empty();
        }
    }
    EXPECT_GT(warned, 0);
}
