#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ndwp/banded.hpp"

namespace ndwp::floquet {

enum class DipoleMode { Semiclassical, Exact };

std::string to_string(DipoleMode m);
DipoleMode dipole_mode_from_string(const std::string& s);

// <n|z|n'> for the 1D atom.
double dipole_matrix_1d(int n, int n_prime, DipoleMode mode);

struct FloquetBasis {
    int n_min = 1;
    int n_max = 1;
    int k_min = 0;
    int k_max = 0;

    int Nn() const { return n_max - n_min + 1; }
    int Nk() const { return k_max - k_min + 1; }
    int size() const { return Nn() * Nk(); }
    int index(int n, int k) const { return (k - k_min) * Nn() + (n - n_min); }
    void validate() const;
};

// Dipole table z[i][j] = <n_min+i|z|n_min+j> over the basis n-range.
std::vector<std::vector<double>> dipole_table(int n_min, int n_max, DipoleMode mode);

linalg::SymmetricBanded build_floquet_matrix(const FloquetBasis& basis, double F, double omega,
                                             DipoleMode mode = DipoleMode::Semiclassical);

double reduce_quasienergy(double energy, double omega);

struct FloquetState {
    double quasienergy = 0.0;  // reduced to [0, omega)
    double energy = 0.0;       // raw eigenvalue
    double slope = 0.0;        // d(energy)/dF by Hellmann-Feynman
    double omega = 0.0;
    FloquetBasis basis;
    std::vector<double> coeffs;

    double coeff(int n, int k) const { return coeffs[static_cast<std::size_t>(basis.index(n, k))]; }
    // sum_k |c_{n,k}|^2 indexed by n - n_min.
    std::vector<double> n_distribution() const;
    double island_weight(double n_center, double half_width) const;
    double mean_k() const;
    double norm() const;
    // a_n(t) = sum_k c_{n,k} exp(-i k omega t), indexed by n - n_min.
    std::vector<std::complex<double>> amplitudes_at(double t) const;
};

struct SolveOptions {
    DipoleMode mode = DipoleMode::Semiclassical;
    int dense_limit = 4000;
    int count = 8;
};

// Eigenstates near `target` (count of them, closest first by raw energy).
// Dense diagonalisation below dense_limit, shift-invert Lanczos above.
std::vector<FloquetState> floquet_states(const FloquetBasis& basis, double F, double omega, double target,
                                         const SolveOptions& opt = {});
std::vector<FloquetState> floquet_states_all(const FloquetBasis& basis, double F, double omega,
                                             DipoleMode mode = DipoleMode::Semiclassical);

struct WavepacketPrediction {
    double quasienergy = 0.0;  // raw value on the k = 0 replica
    double slope = 0.0;
    double omega_harm = 0.0;
    double n_center = 0.0;
    double half_width = 0.0;
};

// Semiclassical target for the kappa-th island state at (n0, F0), s = 1.
WavepacketPrediction predict_wavepacket(double n0, double F0, int kappa = 0);

struct IdentifyOptions {
    double predicted_slope = 0.0;
    double omega_harm = 0.0;
    std::optional<std::pair<double, double>> band;  // (n_center, half_width)
    double ambiguity_margin = 0.1;
};

struct Identification {
    FloquetState state;
    std::size_t index = 0;
    double score = 0.0;
    bool ambiguous = false;
    std::vector<std::size_t> candidates;
    std::vector<double> scores;
    std::string warning;
};

Identification identify_wavepacket(const std::vector<FloquetState>& states, double prediction, double F,
                                   double omega, const IdentifyOptions& opt);

// Wave function of a Floquet state at time t on a z grid.
std::vector<std::complex<double>> floquet_wavefunction(const FloquetState& st, double t,
                                                       const std::vector<double>& z);

}  // namespace ndwp::floquet
