#pragma once

#include <cstdint>
#include <vector>

#include "ndwp/floquet.hpp"

namespace ndwp::open_system {

struct RmtModel {
    double sigma = 0.0;
    double gamma = 0.0;
    double delta = 1.0;
    int n_chaotic = 100;
    std::uint64_t seed = 1;
    void validate() const;
};

struct DecayEnsemble {
    std::vector<double> shifts;
    std::vector<double> widths;
    int flagged = 0;  // samples dropped for ambiguous identification
};

// One regular level at zero energy coupled to a GOE block of absorbing
// chaotic levels; samples are independent of thread scheduling.
DecayEnsemble sample_rmt(const RmtModel& model, int n_samples);

struct CauchyFit {
    double location = 0.0;
    double scale = 0.0;
};
// Maximum-likelihood Cauchy fit.
CauchyFit fit_cauchy(const std::vector<double>& x);
double cauchy_cdf(double x, const CauchyFit& f);

struct KsResult {
    double statistic = 0.0;
    double p_value = 0.0;
};
KsResult ks_test_cauchy(const std::vector<double>& x, const CauchyFit& f);
double kolmogorov_q(double lambda);

struct TailDiagnostics {
    double algebraic_decades = 0.0;  // span of |x| with survival slope near -1
    bool cutoff_detected = false;
    double cutoff_scale = 0.0;
};
TailDiagnostics tail_diagnostics(const std::vector<double>& x, const CauchyFit& f);

struct DistributionSummary {
    CauchyFit shifts;
    double sqrt_width_scale = 0.0;  // half-Cauchy scale of sqrt(widths)
    double mean_width = 0.0;
    TailDiagnostics shift_tail;
    std::size_t samples = 0;
};
DistributionSummary distribution_summary(const DecayEnsemble& e);

struct ProbeLine {
    double energy = 0.0;
    double dipole = 0.0;
    double width = 0.0;
};

// sigma(w) = w * sum_f |d_f|^2 (g_f/2) / ((E_f - E0 - w)^2 + g_f^2/4).
std::vector<double> probe_cross_section(const std::vector<ProbeLine>& lines, double E0,
                                        const std::vector<double>& omega_grid);
// Lines from the k = 0 components of Floquet states probed from bare level n_initial.
std::vector<ProbeLine> probe_lines(const std::vector<floquet::FloquetState>& states, int n_initial,
                                   const std::vector<double>& widths,
                                   floquet::DipoleMode mode = floquet::DipoleMode::Semiclassical);

double spontaneous_rate(double Ei, double Ef, double dipole);

struct ElasticRate {
    double rate = 0.0;
    double energy_loss = 0.0;
    double energy_loss_classical = 0.0;
};
ElasticRate cp_elastic_rate(double omega, double q);

struct PowerLawFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double rms_log_residual = 0.0;
};
// y = c x^k with k free, and with k fixed.
PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);
PowerLawFit fit_power_law_fixed(const std::vector<double>& x, const std::vector<double>& y, double exponent);

struct ExponentialFit {
    double rate = 0.0;
    double prefactor = 0.0;
    double rms_log_residual = 0.0;
};
// y = c exp(-r x).
ExponentialFit fit_exponential(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ndwp::open_system
