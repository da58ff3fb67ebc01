#include <gtest/gtest.h>

#include <cmath>

#include "ndwp/errors.hpp"
#include "ndwp/pulse.hpp"

using namespace ndwp;

TEST(Pulse, EnvelopeShapes) {
    const pulse::PulseProfile s{2.0, 10.0, pulse::PulseShape::Sin2};
    const pulse::PulseProfile l{2.0, 10.0, pulse::PulseShape::Linear};
    EXPECT_EQ(pulse::pulse_amplitude(s, 0.0), 0.0);
    EXPECT_NEAR(pulse::pulse_amplitude(s, 5.0), 1.0, 1e-12);
    EXPECT_NEAR(pulse::pulse_amplitude(l, 2.5), 0.5, 1e-12);
    EXPECT_EQ(pulse::pulse_amplitude(s, 20.0), 2.0);
    EXPECT_THROW(pulse::pulse_amplitude({-1.0, 1.0}, 0.0), DomainError);
}

TEST(Pulse, Timescales) {
    const auto t = pulse::switching_timescales(60.0, 0, 0);
    EXPECT_NEAR(t.F0_trapping, 1.0 / 3600.0, 1e-15);
    EXPECT_NEAR(t.tau_trapping, 60.0, 1e-12);
}

TEST(Pulse, FieldFreePropagationKeepsLevel) {
    const double omega = 1.0 / 27000.0;
    const pulse::PulseBasis b{25, 35, -5, 5};
    const auto r = pulse::propagate_pulse_1d(30, {0.0, 3.0}, omega, b);
    EXPECT_NEAR(r.overlap, 1.0, 1e-12);
    EXPECT_NEAR(r.static_overlap, 1.0, 1e-12);
    EXPECT_EQ(r.steps, 180);
}

TEST(Pulse, NormConservedUnderDrive) {
    const double n0 = 30.0, omega = 1.0 / (n0 * n0 * n0), F = 0.02 / std::pow(n0, 4);
    const pulse::PulseBasis b{18, 45, -20, 20};
    pulse::PulseOptions o;
    o.steps_per_period = 40;
    const auto r = pulse::propagate_pulse_1d(30, {F, 20.0}, omega, b, o);
    EXPECT_LT(r.norm_error, 1e-10);
    EXPECT_GT(r.overlap, r.static_overlap);
    EXPECT_THROW(pulse::propagate_pulse_1d(50, {F, 1.0}, omega, b, o), DomainError);
}

TEST(Pulse, SurvivalProbability) {
    const std::vector<double> times{0.0, 1.0, 2.0, 3.0};
    const auto mono = pulse::mono_exponential_check({1.0}, {0.5}, times);
    EXPECT_NEAR(mono.rate, 0.5, 1e-12);
    EXPECT_NEAR(mono.rms_residual, 0.0, 1e-12);
    const auto mixed = pulse::mono_exponential_check({0.5, 0.5}, {0.1, 2.0}, times);
    EXPECT_GT(mixed.rms_residual, 0.05);
    EXPECT_NEAR(pulse::survival_probability({0.3, 0.7}, {1.0, 0.0}, 0.0), 1.0, 1e-15);
}
