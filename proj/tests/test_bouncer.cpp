#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "ndwp/bouncer.hpp"
#include "ndwp/errors.hpp"
#include "ndwp/units.hpp"

using namespace ndwp;

TEST(Bouncer, EnergyFromActionIntegral) {
    // Oracle: I(E) = (1/pi) int_0^E sqrt(2 (E - z)) dz, inverted numerically.
    boost::math::quadrature::tanh_sinh<double> ts;
    for (double E : {0.5, 3.0, 40.0}) {
        const double I = 1.0 / kPi * ts.integrate([&](double z) { return std::sqrt(2.0 * (E - z)); }, 0.0, E);
        const auto h = bouncer::bouncer_h0(I);
        EXPECT_NEAR(h.energy / E, 1.0, 1e-12);
        const double dI = 1e-5 * I;
        const double num = (bouncer::bouncer_h0(I + dI).energy - bouncer::bouncer_h0(I - dI).energy) / (2 * dI);
        EXPECT_NEAR(h.frequency / num, 1.0, 1e-8);
    }
}

TEST(Bouncer, ResonanceFrequencies) {
    EXPECT_NEAR(bouncer::bouncer_resonance(1, 1000.0).omega, 0.1487, 5e-5);
    EXPECT_NEAR(bouncer::bouncer_resonance(2, 1000.0).omega, 0.2974, 5e-5);
    EXPECT_NEAR(bouncer::bouncer_resonance(2, 20.0).omega, 1.0825, 5e-5);
    // s omega_0 at the resonant action matches the drive.
    const auto r = bouncer::bouncer_resonance(3, 50.0);
    EXPECT_NEAR(3.0 * bouncer::bouncer_h0(r.I_s).frequency, r.omega, 1e-12);
}

TEST(Bouncer, FreeFlightIsRigid) {
    const bouncer::BounceState s{2.0, 0.3};
    const auto t = bouncer::bounce_map(s, 0.0, 1.7);
    EXPECT_NEAR(t.p, 2.0, 1e-12);
    EXPECT_NEAR(t.phase, 0.3 + 1.7 * 4.0, 1e-12);
    const auto k = bouncer::standard_map(s, 0.0, 1.7);
    EXPECT_NEAR(k.p, t.p, 1e-12);
    EXPECT_NEAR(std::remainder(k.phase - t.phase, kTwoPi), 0.0, 1e-12);
}

TEST(Bouncer, ExactMapPreservesEnergyTimeArea) {
    const double lambda = 0.05, omega = 1.3, h = 1e-6;
    for (const bouncer::BounceState s : {bouncer::BounceState{2.0, 0.4}, bouncer::BounceState{3.1, 4.0}}) {
        const auto f = [&](double p, double ph) { return bouncer::bounce_map({p, ph}, lambda, omega); };
        const auto a = f(s.p + h, s.phase), b = f(s.p - h, s.phase);
        const auto c = f(s.p, s.phase + h), d = f(s.p, s.phase - h);
        const double J = ((a.p - b.p) * (c.phase - d.phase) - (a.phase - b.phase) * (c.p - d.p)) / (4 * h * h);
        const auto o = f(s.p, s.phase);
        EXPECT_NEAR(J * o.p / s.p, 1.0, 1e-5);
    }
}

TEST(Bouncer, KickedMapApproachesExactForWeakDrive) {
    const double omega = 1.0;
    const bouncer::BounceState s{3.0, 1.0};
    double prev = 1e300;
    for (double lambda : {0.04, 0.02, 0.01}) {
        const auto e = bouncer::bounce_map(s, lambda, omega);
        const auto k = bouncer::standard_map(s, lambda, omega);
        const double err = std::abs(bouncer::wall_momentum(e, lambda, omega) - k.p) +
                           std::abs(std::remainder(e.phase - k.phase, kTwoPi));
        EXPECT_LT(err, prev);
        prev = err;
    }
}

TEST(Bouncer, SplittingDecreasesWithDrive) {
    const double omega = bouncer::bouncer_resonance(2, 20.0).omega;
    double prev = 1e300;
    for (double l : {0.002, 0.005, 0.01, 0.02}) {
        const double d = bouncer::tunneling_splitting(l, omega);
        EXPECT_GT(d, 0.0);
        EXPECT_LT(d, prev);
        prev = d;
    }
    EXPECT_GT(bouncer::mathieu_splitting(0.01, 20.0), 0.0);
    EXPECT_THROW(bouncer::tunneling_splitting(0.0, 1.0), DomainError);
}

TEST(Bouncer, ResonanceIslandMatchesPendulum) {
    const auto isl = bouncer::bounce_island_width(100.0, 0.01);
    EXPECT_GT(isl.librational_seeds, 3);
    EXPECT_NEAR(isl.width_I / isl.predicted_width_I, 1.0, 0.25);
}

TEST(Bouncer, ActionAtBounce) { EXPECT_NEAR(bouncer::action_at_bounce(std::cbrt(3.0 * kPi)), 1.0, 1e-12); }
