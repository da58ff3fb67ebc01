#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace ndwp::wavepacket {

using cvec = std::vector<std::complex<double>>;

struct WavePacketSuperposition {
    double n0 = 0.0;
    double delta_n = 0.0;
    std::vector<int> n;
    cvec coeffs;
};

// |c_n|^2 proportional to exp(-(n - n0)^2 / (2 delta_n^2)), truncated at
// `cutoff` widths and renormalised.
WavePacketSuperposition gaussian_superposition(double n0, double delta_n, double cutoff = 10.0);

struct RevivalTimes {
    double T_rec = 0.0;
    double T_col = 0.0;
    double T_rev = 0.0;
};
RevivalTimes revival_times(double n0, double delta_n);

// Coefficients c_n exp(-i E_n t) with E_n = -1/(2 n^2).
cvec propagate_superposition(const WavePacketSuperposition& wp, double t);
std::complex<double> autocorrelation(const WavePacketSuperposition& wp, double t);

struct Trace {
    std::vector<double> t;
    std::vector<double> value;
};
Trace autocorrelation_trace(const WavePacketSuperposition& wp, double t_end, std::size_t samples);

// First time after which |A| stays below `threshold` for one full
// recurrence period.  Returns a negative value if it never happens before t_end.
double measured_collapse_time(const WavePacketSuperposition& wp, double threshold, double t_end,
                              std::size_t samples_per_period = 400);
// Time of the largest |A| in [t_lo, t_hi].
double measured_revival_time(const WavePacketSuperposition& wp, double t_lo, double t_hi,
                             std::size_t samples_per_period = 400);

// Wave function sum_n a_n u_n(z) of a bound-state superposition on a z grid.
cvec wavefunction_on_grid(const std::vector<int>& n, const cvec& amplitudes, const std::vector<double>& z);

struct Uncertainty {
    double delta_z = 0.0;
    double delta_p = 0.0;
    double product() const { return delta_z * delta_p; }
};
// Position/momentum spreads of a grid wave function (uniform grid).
Uncertainty grid_uncertainty(const cvec& psi, const std::vector<double>& z);

struct FreeSpread {
    double delta_z = 0.0;
    double delta_p = 0.0;
    double product() const { return delta_z * delta_p; }
};
FreeSpread free_gaussian_spread(double sigma, double t);

cvec coherent_state(const std::vector<double>& z, double z0, double p0, double sigma);

struct HusimiGrid {
    std::vector<double> z;
    std::vector<double> p;
    std::vector<double> values;  // values[i * p.size() + j] at (z[i], p[j])
    double sigma = 0.0;

    double at(std::size_t i, std::size_t j) const { return values[i * p.size() + j]; }
    // Integral of Hus over dz dp / 2, which is 1 for a normalised state.
    double total_mass() const;
    double mass_where(const std::function<bool(double, double)>& inside) const;
};

// Hus(z0, p0) = |<coh(z0, p0)|psi>|^2 / pi on the (zc, pc) grid; psi is
// sampled on the uniform grid z.
HusimiGrid husimi(const cvec& psi, const std::vector<double>& z, const std::vector<double>& zc,
                  const std::vector<double>& pc, double sigma);

std::vector<double> linspace(double a, double b, std::size_t n);

}  // namespace ndwp::wavepacket
