#pragma once

#include <string>
#include <vector>

#include "ndwp/pendulum.hpp"

namespace ndwp::cp {

struct CpFixedPoint {
    double x_eq = 0.0;
    double q = 0.0;
    double F = 0.0;
    double omega = 0.0;
    double omega_c = 0.0;
    double E_eq = 0.0;
    bool stable = false;
};

struct NormalModes {
    double omega_plus = 0.0;
    double omega_minus = 0.0;
    double omega_z = 0.0;
    double Q = 0.0;
};

struct StabilityParams {
    double a = 0.0;
    double b = 0.0;
    double omega_tilde = 0.0;
};

struct StabilityVerdict {
    bool stable = false;
    int region = 0;  // 1, 2, or 0 for none
};

// Equilibria of the rotating-frame problem with optional magnetic field,
// both signs of x_eq; unphysical branches are omitted.
std::vector<CpFixedPoint> cp_fixed_points(double F, double omega, double omega_c = 0.0);

// Pure CP quantities as functions of q.
double scaled_field_from_q(double q);
double q_from_scaled_field(double F0);
double field_from_q(double q, double omega, double omega_c = 0.0);
double energy_from_q(double q, double omega, double omega_c = 0.0);

StabilityParams stability_params(const CpFixedPoint& fp);
StabilityVerdict oscillator_stability(const StabilityParams& p);
// Direct check: eigenvalues of the 4x4 linearised rotating-frame flow lie on
// the imaginary axis.
bool linearized_stable(const StabilityParams& p, double tol = 1e-9);

NormalModes normal_modes(double q, double omega);
double harmonic_energies_cp(int n_plus, int n_minus, int n_z, const CpFixedPoint& fp, int dim = 3);

double ionization_threshold_magnetic(double F, double omega, double omega_c);

// q where omega_plus = 2 omega_minus.
double one_two_resonance_q();

struct ZvsReport {
    bool zvs_maximum = false;
    bool stable = false;
};
// Zero-velocity-surface character of the pure CP fixed point at q.
ZvsReport zero_velocity_demo(double q, double omega);

// Pendulum description of the CP resonance; dim = 2 uses the planar atom.
pendulum::PendulumParams cp_pendulum(double n0, double F0, int dim = 3);

struct StabilityCell {
    double F0 = 0.0;
    double omega_c_ratio = 0.0;
    double q = 0.0;
    double a = 0.0;
    double b = 0.0;
    int region = 0;
    bool exists = false;
};
std::vector<StabilityCell> stability_diagram(const std::vector<double>& F0_grid,
                                             const std::vector<double>& omega_c_ratio_grid, double n0);

}  // namespace ndwp::cp
