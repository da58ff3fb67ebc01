#pragma once

#include <complex>
#include <vector>

#include "ndwp/floquet.hpp"

namespace ndwp::pulse {

enum class PulseShape { Sin2, Linear };

struct PulseProfile {
    double F_max = 0.0;     // a.u.
    double T_switch = 0.0;  // drive periods
    PulseShape shape = PulseShape::Sin2;
    void validate() const;
};

// Envelope at time t measured in drive periods; constant F_max after the rise.
double pulse_amplitude(const PulseProfile& profile, double t);

struct SwitchingTimescales {
    double F0_trapping = 0.0;
    double tau_trapping = 0.0;    // periods
    double tau_unharmonic = 0.0;  // periods
};
// Order-of-magnitude estimates only; numerical prefactors are not included.
SwitchingTimescales switching_timescales(double n0, int n_plus, int n_minus);

struct PulseBasis {
    int n_min = 35;
    int n_max = 85;
    int k_min = -40;
    int k_max = 40;
};

struct PulseOptions {
    int steps_per_period = 60;
    double norm_tolerance = 1e-8;
    floquet::DipoleMode mode = floquet::DipoleMode::Semiclassical;
};

struct PulseTarget {
    bool bare = false;  // F_max = 0: target is the unperturbed level
    int n_bare = 0;
    floquet::FloquetState state;
    floquet::Identification identification;
};

PulseTarget make_pulse_target(int initial_n, double F_max, double omega, const PulseBasis& basis,
                              const PulseOptions& opt = {});

struct PulseResult {
    std::vector<std::complex<double>> final_state;  // indexed by n - n_min
    double overlap = 0.0;
    double static_overlap = 0.0;
    double norm_error = 0.0;
    double final_time = 0.0;  // a.u.
    int steps = 0;
};

PulseResult propagate_pulse_1d(int initial_n, const PulseProfile& profile, double omega, const PulseBasis& basis,
                               const PulseTarget& target, const PulseOptions& opt = {});
PulseResult propagate_pulse_1d(int initial_n, const PulseProfile& profile, double omega, const PulseBasis& basis,
                               const PulseOptions& opt = {});

struct ScanPoint {
    double T_switch = 0.0;
    double overlap = 0.0;
    double norm_error = 0.0;
};
std::vector<ScanPoint> switching_scan(int initial_n, double F_max, double omega, const PulseBasis& basis,
                                      const std::vector<double>& T_switch_list, const PulseOptions& opt = {});

double survival_probability(const std::vector<double>& weights, const std::vector<double>& widths, double t);

struct ExponentialityCheck {
    double rate = 0.0;
    double rms_residual = 0.0;  // of log P about the best line
};
ExponentialityCheck mono_exponential_check(const std::vector<double>& weights, const std::vector<double>& widths,
                                           const std::vector<double>& times);

}  // namespace ndwp::pulse
