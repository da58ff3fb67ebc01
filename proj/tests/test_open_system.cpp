#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ndwp/errors.hpp"
#include "ndwp/open_system.hpp"
#include "ndwp/units.hpp"

using namespace ndwp;

namespace {
std::vector<double> cauchy_sample(double loc, double scale, int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::cauchy_distribution<double> c(loc, scale);
    std::vector<double> x(n);
    for (auto& v : x) v = c(rng);
    return x;
}
}  // namespace

TEST(OpenSystem, CauchyFitRecoversScale) {
    const auto x = cauchy_sample(0.3, 2.0, 5000, 17);
    const auto f = open_system::fit_cauchy(x);
    EXPECT_NEAR(f.scale / 2.0, 1.0, 0.05);
    EXPECT_NEAR(f.location, 0.3, 0.15);
    EXPECT_GT(open_system::ks_test_cauchy(x, f).p_value, 0.01);
}

TEST(OpenSystem, KsRejectsGaussian) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    std::vector<double> x(5000);
    for (auto& v : x) v = g(rng);
    EXPECT_LT(open_system::ks_test_cauchy(x, open_system::fit_cauchy(x)).p_value, 1e-3);
}

TEST(OpenSystem, KolmogorovTail) {
    EXPECT_DOUBLE_EQ(open_system::kolmogorov_q(0.0), 1.0);
    EXPECT_NEAR(open_system::kolmogorov_q(1.36), 0.0494, 5e-4);
    EXPECT_LT(open_system::kolmogorov_q(3.0), 1e-6);
}

TEST(OpenSystem, SamplerIsDeterministic) {
    open_system::RmtModel m;
    m.sigma = 0.05;
    m.gamma = 0.05;
    m.seed = 99;
    const auto a = open_system::sample_rmt(m, 300);
    const auto b = open_system::sample_rmt(m, 300);
    EXPECT_EQ(a.shifts, b.shifts);
    EXPECT_EQ(a.widths, b.widths);
    // A prefix of a longer run matches the shorter run.
    const auto c = open_system::sample_rmt(m, 50);
    for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(a.shifts[i], c.shifts[i]);
}

TEST(OpenSystem, ExactLimits) {
    open_system::RmtModel m;
    m.sigma = 0.0;
    m.gamma = 0.05;
    const auto z = open_system::sample_rmt(m, 20);
    for (std::size_t i = 0; i < z.shifts.size(); ++i) {
        EXPECT_EQ(z.shifts[i], 0.0);
        EXPECT_EQ(z.widths[i], 0.0);
    }
    m.sigma = 0.05;
    m.gamma = 0.0;
    const auto h = open_system::sample_rmt(m, 50);
    for (double w : h.widths) EXPECT_EQ(w, 0.0);
    m.sigma = -1.0;
    EXPECT_THROW(open_system::sample_rmt(m, 1), DomainError);
}

TEST(OpenSystem, PerturbativeShiftScale) {
    // Cauchy scale of second-order shifts is pi sigma^2 / Delta.
    open_system::RmtModel m;
    m.sigma = 0.03;
    m.gamma = 0.03;
    m.seed = 5;
    const auto e = open_system::sample_rmt(m, 3000);
    const auto f = open_system::fit_cauchy(e.shifts);
    EXPECT_NEAR(f.scale / (kPi * 0.03 * 0.03), 1.0, 0.15);
    for (double w : e.widths) EXPECT_GE(w, 0.0);
    const auto s = open_system::distribution_summary(open_system::sample_rmt(m, 1000));
    EXPECT_EQ(s.samples, 1000u);
    EXPECT_GT(s.mean_width, 0.0);
}

TEST(OpenSystem, SingleLineIsLorentzian) {
    const std::vector<open_system::ProbeLine> l{{1.0, 2.0, 0.1}};
    const std::vector<double> w{0.9, 0.95, 1.0, 1.05};
    const auto s = open_system::probe_cross_section(l, 0.0, w);
    EXPECT_NEAR(s[2] / w[2], 4.0 / 0.05, 1e-12);
    // Half maximum at a half width from the centre, after removing the w prefactor.
    EXPECT_NEAR((s[1] / w[1]) / (s[2] / w[2]), 0.5, 1e-12);
    EXPECT_NEAR((s[3] / w[3]) / (s[2] / w[2]), 0.5, 1e-12);
}

TEST(OpenSystem, SpontaneousRate) {
    const double c = 137.035999;
    EXPECT_NEAR(open_system::spontaneous_rate(-0.125, -0.5, 1.29) / (4.0 * std::pow(0.375, 3) * 1.29 * 1.29 / (3.0 * c * c * c)), 1.0, 1e-6);
    EXPECT_THROW(open_system::spontaneous_rate(-0.5, -0.125, 1.0), DomainError);
}

TEST(OpenSystem, ElasticRateMatchesClassicalRadiation) {
    const auto r = open_system::cp_elastic_rate(1.0 / 216000.0, 0.95);
    EXPECT_NEAR(r.energy_loss / r.energy_loss_classical, 1.0, 1e-10);
    EXPECT_THROW(open_system::cp_elastic_rate(1.0, 0.5), DomainError);
}

TEST(OpenSystem, Fits) {
    std::vector<double> x, y, ye;
    for (int i = 1; i <= 10; ++i) {
        x.push_back(i);
        y.push_back(3.0 * std::pow(i, -2.5));
        ye.push_back(2.0 * std::exp(-0.4 * i));
    }
    const auto p = open_system::fit_power_law(x, y);
    EXPECT_NEAR(p.exponent, -2.5, 1e-10);
    EXPECT_NEAR(p.prefactor, 3.0, 1e-9);
    EXPECT_NEAR(open_system::fit_power_law_fixed(x, y, -2.5).prefactor, 3.0, 1e-9);
    const auto e = open_system::fit_exponential(x, ye);
    EXPECT_NEAR(e.rate, 0.4, 1e-10);
    EXPECT_NEAR(e.prefactor, 2.0, 1e-9);
}
