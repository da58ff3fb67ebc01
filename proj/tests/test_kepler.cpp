#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <cmath>
#include <random>

#include "ndwp/errors.hpp"
#include "ndwp/kepler.hpp"
#include "ndwp/units.hpp"

using namespace ndwp;

TEST(Kepler, EnergiesAndFrequency) {
    EXPECT_DOUBLE_EQ(kepler::kepler_energy(60.0), -0.5 / 3600.0);
    EXPECT_DOUBLE_EQ(kepler::quantized_energy(60, 3), -0.5 / 3600.0);
    EXPECT_DOUBLE_EQ(kepler::quantized_energy(0, 2), -2.0);
    EXPECT_DOUBLE_EQ(kepler::kepler_frequency(60.0), 1.0 / 216000.0);
    // dH/dI equals the frequency.
    const double h = 1e-4;
    EXPECT_NEAR((kepler::kepler_energy(60.0 + h) - kepler::kepler_energy(60.0 - h)) / (2 * h),
                kepler::kepler_frequency(60.0), 1e-12);
    EXPECT_THROW(kepler::quantized_energy(0, 3), DomainError);
}

TEST(Kepler, EccentricAnomalySolvesKeplerEquation) {
    for (double e : {0.0, 0.3, 0.9, 0.999, 1.0})
        for (double th = 0.0; th < kTwoPi; th += 0.37) {
            const double E = kepler::eccentric_anomaly(th, e);
            EXPECT_NEAR(E - e * std::sin(E), th, 1e-12) << e << " " << th;
        }
}

TEST(Kepler, OneDimensionalRoundTrip) {
    for (double I : {1.0, 60.0, 400.0})
        for (double th = 0.05; th < kTwoPi; th += 0.41) {
            const auto c = kepler::cartesian_from_aa_1d(I, th);
            const double E = 0.5 * c.p * c.p - 1.0 / c.z;
            EXPECT_NEAR(E, -0.5 / (I * I), 1e-12 / (I * I));
            const auto aa = kepler::aa_from_cartesian_1d(c.z, c.p, E);
            EXPECT_NEAR(aa.I, I, 1e-10 * I);
            EXPECT_NEAR(std::remainder(aa.theta - th, kTwoPi), 0.0, 1e-9);
        }
}

TEST(Kepler, OneDimensionalFourierCoefficientsMatchBessel) {
    for (int m = 1; m < 12; ++m) {
        const double ref = -boost::math::cyl_bessel_j_prime(m, static_cast<double>(m)) / m;
        EXPECT_NEAR(kepler::fourier_dipole_1d(60.0, m), 3600.0 * ref, 1e-10);
        EXPECT_EQ(kepler::fourier_dipole_1d(60.0, -m), kepler::fourier_dipole_1d(60.0, m));
    }
    EXPECT_DOUBLE_EQ(kepler::fourier_dipole_1d(60.0, 0), 1.5 * 3600.0);
}

TEST(Kepler, OneDimensionalSynthesisDecay) {
    // Coefficients fall as m^(-5/3); the truncated series converges slowly at
    // the cusp but uniformly away from it.
    const double r = kepler::fourier_dipole_1d(1.0, 400) / kepler::fourier_dipole_1d(1.0, 200);
    EXPECT_NEAR(r, std::pow(2.0, -5.0 / 3.0), 5e-3);
    const auto c = kepler::cartesian_from_aa_1d(1.0, 2.0);
    const double err200 = std::abs(kepler::synthesize_1d(1.0, 2.0, 200) - c.z);
    const double err50 = std::abs(kepler::synthesize_1d(1.0, 2.0, 50) - c.z);
    EXPECT_LT(err200, err50);
    EXPECT_LT(err200, 1e-4);
}

TEST(Kepler, OrbitSynthesisConvergesForModerateEccentricity) {
    const double I = 1.0;
    for (double e : {0.0, 0.5, 0.9}) {
        const double L = I * std::sqrt(1.0 - e * e);
        double worst = 0.0;
        for (double th = 0.0; th < kTwoPi; th += 0.1) {
            const auto ex = kepler::orbit_local(I, L, th);
            const auto sy = kepler::synthesize_orbit(I, L, th, 400);
            worst = std::max({worst, std::abs(ex[0] - sy[0]), std::abs(ex[1] - sy[1])});
        }
        EXPECT_LT(worst, 1e-6) << "e=" << e;
    }
}

TEST(Kepler, CircularOrbitCoefficients) {
    const auto xy = kepler::fourier_dipole_orbit(60.0, 60.0, 1);
    EXPECT_NEAR(xy[0], 1800.0, 1e-9);
    EXPECT_NEAR(xy[1], 1800.0, 1e-9);
    EXPECT_NEAR(kepler::dipole_X0(60.0, 60.0), 0.0, 1e-12);
    EXPECT_NEAR(kepler::dipole_X0(60.0, 0.0), -1.5 * 3600.0, 1e-9);
    for (int m = 2; m < 6; ++m) {
        const auto c = kepler::fourier_dipole_orbit(60.0, 60.0, m);
        EXPECT_NEAR(c[0], 0.0, 1e-9);
        EXPECT_NEAR(c[1], 0.0, 1e-9);
    }
}

TEST(Kepler, StraightLineLimitMatchesOneDimensionalAtom) {
    for (int m = 1; m < 6; ++m) {
        const auto c = kepler::fourier_dipole_orbit(60.0, 0.0, m);
        EXPECT_NEAR(-c[0], kepler::fourier_dipole_1d(60.0, m), 1e-9);
        EXPECT_NEAR(c[1], 0.0, 1e-12);
    }
}

TEST(Kepler, EulerMatrixIsRotation) {
    const auto R = kepler::euler_matrix(0.3, 1.1, -0.7);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += R[i][k] * R[j][k];
            EXPECT_NEAR(s, i == j ? 1.0 : 0.0, 1e-14);
        }
}

TEST(Kepler, ElementsRoundTripOnRandomOrbits) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        kepler::KeplerElements el;
        el.I = 10.0 + 90.0 * u(rng);
        el.L = el.I * (0.05 + 0.9 * u(rng));
        el.M = el.L * (2.0 * u(rng) - 1.0) * 0.95;
        el.theta = kTwoPi * u(rng);
        el.psi = kTwoPi * u(rng);
        el.phi = kTwoPi * u(rng);
        const auto c = kepler::cartesian_from_elements(el);
        const auto back = kepler::elements_from_cartesian(c.r, c.p);
        EXPECT_NEAR(back.I, el.I, 1e-9 * el.I);
        EXPECT_NEAR(back.L, el.L, 1e-9 * el.I);
        EXPECT_NEAR(back.M, el.M, 1e-9 * el.I);
        EXPECT_NEAR(std::remainder(back.theta - el.theta, kTwoPi), 0.0, 1e-8);
        EXPECT_NEAR(std::remainder(back.psi - el.psi, kTwoPi), 0.0, 1e-8);
        EXPECT_NEAR(std::remainder(back.phi - el.phi, kTwoPi), 0.0, 1e-8);
    }
}

TEST(Kepler, CartesianStateHasKeplerEnergyAndAngularMomentum) {
    kepler::KeplerElements el;
    el.I = 30.0;
    el.L = 12.0;
    el.M = -5.0;
    el.theta = 2.0;
    el.psi = 0.4;
    el.phi = 1.7;
    const auto c = kepler::cartesian_from_elements(el);
    const double r = std::sqrt(c.r[0] * c.r[0] + c.r[1] * c.r[1] + c.r[2] * c.r[2]);
    const double v2 = c.p[0] * c.p[0] + c.p[1] * c.p[1] + c.p[2] * c.p[2];
    EXPECT_NEAR(0.5 * v2 - 1.0 / r, -0.5 / 900.0, 1e-14);
    const double Lz = c.r[0] * c.p[1] - c.r[1] * c.p[0];
    EXPECT_NEAR(Lz, -5.0, 1e-10);
}
