#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <boost/math/special_functions/laguerre.hpp>
#include <cmath>

#include "ndwp/special.hpp"

using namespace ndwp;

class BesselAgainstBoost : public ::testing::TestWithParam<double> {};

TEST_P(BesselAgainstBoost, ValuesAndDerivatives) {
    const double x = GetParam();
    for (int m = 0; m <= 60; ++m) {
        const double ref = boost::math::cyl_bessel_j(m, x);
        const double refp = boost::math::cyl_bessel_j_prime(m, x);
        EXPECT_NEAR(special::bessel_j(m, x), ref, 1e-13 + 1e-11 * std::abs(ref)) << "m=" << m;
        EXPECT_NEAR(special::bessel_jp(m, x), refp, 1e-13 + 1e-11 * std::abs(refp)) << "m=" << m;
    }
}

INSTANTIATE_TEST_SUITE_P(Arguments, BesselAgainstBoost, ::testing::Values(0.0, 1e-6, 0.3, 1.0, 1.9, 2.0, 5.5, 17.0, 45.0));

TEST(Bessel, NegativeOrderAndArgumentSymmetry) {
    for (int m = 1; m < 8; ++m) {
        const double s = (m % 2) ? -1.0 : 1.0;
        EXPECT_NEAR(special::bessel_j(-m, 2.7), s * special::bessel_j(m, 2.7), 1e-15);
        EXPECT_NEAR(special::bessel_j(m, -2.7), s * special::bessel_j(m, 2.7), 1e-15);
    }
}

TEST(Bessel, DiagonalArgumentForKeplerCoefficients) {
    for (int m = 1; m <= 200; m += 7) {
        const double ref = boost::math::cyl_bessel_j_prime(m, static_cast<double>(m));
        EXPECT_NEAR(special::bessel_jp(m, m) / ref, 1.0, 1e-10) << m;
    }
}

TEST(Bessel, OverXHasFiniteLimit) {
    EXPECT_NEAR(special::bessel_j_over_x(1, 0.0), 0.5, 1e-15);
    EXPECT_NEAR(special::bessel_j_over_x(2, 0.0), 0.0, 1e-15);
    for (double x : {1e-8, 1e-3, 0.7, 3.0, 12.0})
        EXPECT_NEAR(special::bessel_j_over_x(3, x), boost::math::cyl_bessel_j(3, x) / x, 1e-14);
}

TEST(Bessel, SequenceMatchesSingleEvaluations) {
    const auto seq = special::bessel_j_sequence(30, 11.3);
    ASSERT_EQ(seq.size(), 31u);
    for (int m = 0; m <= 30; ++m) EXPECT_NEAR(seq[m], boost::math::cyl_bessel_j(m, 11.3), 1e-13);
}

TEST(HydrogenRadial, MatchesLaguerreClosedForm) {
    for (int n : {1, 2, 5, 17}) {
        for (double z : {0.1, 1.0, 4.0, 2.0 * n * n}) {
            const double ref = 2.0 / std::pow(n, 2.5) * z * std::exp(-z / n) *
                               boost::math::laguerre(n - 1, 1, 2.0 * z / n);
            EXPECT_NEAR(special::hydrogen_u(n, z), ref, 1e-12 * (1.0 + std::abs(ref))) << n << " " << z;
        }
    }
}

TEST(HydrogenRadial, NormalisedAndOrthogonal) {
    auto overlap = [](int a, int b) {
        const double zmax = 4.0 * std::max(a, b) * std::max(a, b) + 80.0 * std::max(a, b);
        return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [&](double z) { return special::hydrogen_u(a, z) * special::hydrogen_u(b, z); }, 0.0, zmax, 12, 1e-12);
    };
    EXPECT_NEAR(overlap(3, 3), 1.0, 1e-9);
    EXPECT_NEAR(overlap(12, 12), 1.0, 1e-9);
    EXPECT_NEAR(overlap(4, 9), 0.0, 1e-9);
}

TEST(HydrogenRadial, LargeQuantumNumbersStayFinite) {
    const auto u = special::hydrogen_u_all(150, 3.0e4);
    ASSERT_EQ(u.size(), 150u);
    for (double v : u) EXPECT_TRUE(std::isfinite(v));
    EXPECT_NEAR(u[149], special::hydrogen_u(150, 3.0e4), 1e-12);
}
