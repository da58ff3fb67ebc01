#include <gtest/gtest.h>

#include <cmath>

#include "ndwp/errors.hpp"
#include "ndwp/kepler.hpp"
#include "ndwp/secular.hpp"
#include "ndwp/units.hpp"

using namespace ndwp;

TEST(Secular, CircularOrbitIsFlat) {
    for (double psi : {0.0, 0.7, 2.0}) EXPECT_NEAR(secular::chi1_lp(30.0, 30.0, 0.0, psi).chi, 450.0, 1e-9);
}

TEST(Secular, StraightLineLimit) {
    const double X = std::abs(kepler::fourier_dipole_orbit(30.0, 0.0, 1)[0]);
    EXPECT_NEAR(secular::chi1_lp(30.0, 0.0, 0.0, 0.3).chi, X * std::cos(0.3), 1e-9);
    EXPECT_NEAR(X, std::abs(kepler::fourier_dipole_1d(30.0, 1)), 1e-9);
}

TEST(Secular, DomainChecks) {
    EXPECT_THROW(secular::chi1_lp(10.0, 11.0, 0.0, 0.0), DomainError);
    EXPECT_THROW(secular::chi1_lp(10.0, 5.0, 6.0, 0.0), DomainError);
    EXPECT_THROW(secular::chi1_ep(10.0, 0.0, 0.0, 1.5), DomainError);
}

TEST(Secular, EllipticInterpolatesBetweenLinearAndCircular) {
    // alpha = 0 reproduces the linear surface in the plane (M = L).
    for (double L : {5.0, 12.0}) {
        const double lp = secular::chi1_lp(20.0, L, 0.0, 0.4).chi;
        const double ep = secular::chi1_ep(20.0, L, 0.4, 0.0).chi;
        EXPECT_NEAR(ep, lp, 1e-9);
    }
    // Co- and counter-rotation differ for circular drive.
    EXPECT_GT(std::abs(secular::chi1_ep(20.0, 10.0, 0.2, 1.0).chi - secular::chi1_ep(20.0, -10.0, 0.2, 1.0).chi), 1.0);
}

TEST(Secular, SublevelActionIsMonotone) {
    const auto s = secular::lp1_surface();
    double prev = -1.0;
    for (double c = 0.0; c <= 250.0; c += 25.0) {
        const double a = secular::sublevel_action(s, 21.0, c);
        EXPECT_GE(a, prev);
        prev = a;
    }
    EXPECT_NEAR(prev, 21.0, 1e-9);
}

TEST(Secular, QuantizationCountsAndOrder) {
    const auto q = secular::quantize_angular(secular::lp1_surface(), 21.0, 21);
    ASSERT_EQ(q.loops.size(), 21u);
    for (std::size_t i = 0; i < q.loops.size(); ++i) {
        EXPECT_EQ(q.loops[i].p, static_cast<int>(i));
        EXPECT_NEAR(q.loops[i].action, i + 0.5, 1e-6);
        if (i) EXPECT_GT(q.loops[i].chi, q.loops[i - 1].chi);
    }
    EXPECT_NEAR(q.total_action, 21.0, 1e-9);
    EXPECT_LE(q.chi_min, q.loops.front().chi);
    EXPECT_GE(q.chi_max, q.loops.back().chi);
    const auto e = secular::quantize_angular(secular::ep1_surface(0.5), 10.0, 10);
    EXPECT_EQ(e.loops.size(), 20u);
}

TEST(Secular, ManifoldFollowsChiOrder) {
    const auto lv = secular::manifold_energies(secular::lp1_surface(), 21, 0.03, 0);
    ASSERT_EQ(lv.size(), 21u);
    for (const auto& l : lv) EXPECT_FALSE(l.outside_island);
    // H0'' < 0, so a larger coupling gives a higher quasienergy within the N = 0 ladder.
    for (std::size_t i = 1; i < lv.size(); ++i) EXPECT_GT(lv[i].quasienergy, lv[i - 1].quasienergy);
}

TEST(Secular, StaticFieldCriticalRatio) {
    const double r = secular::critical_static_field(60.0, 0.03) / 0.03;
    EXPECT_NEAR(r, 0.201, 0.004);
    // The static term shifts H_eff linearly with Fs at fixed (L, psi).
    const double F = 0.03 / std::pow(60.0, 4), Fs = 0.1 * F;
    const double h0 = secular::static_field_effective(60.0, 30.0, 1.0, F, 0.0);
    const double h1 = secular::static_field_effective(60.0, 30.0, 1.0, F, Fs);
    const double h2 = secular::static_field_effective(60.0, 30.0, 1.0, F, 2.0 * Fs);
    EXPECT_NEAR(h2 - h1, h1 - h0, 1e-9 * std::abs(h0));
}

TEST(Secular, GridsHaveRequestedShape) {
    const auto g = secular::chi_grid(secular::cp1_surface(2.0), 10.0, 17, 33);
    EXPECT_EQ(g.x.size(), 17u);
    EXPECT_EQ(g.angle.size(), 33u);
    EXPECT_EQ(g.values.size(), 17u * 33u);
    EXPECT_NEAR(g.x.front(), 2.0, 1e-12);
    EXPECT_NEAR(g.x.back(), 10.0, 1e-12);
}
