#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ndwp::pendulum {

// Unperturbed system near an s:1 resonance: H0 and its derivatives plus the
// resonant Fourier coupling, all as functions of the action.
struct ResonantSystem {
    std::function<double(double)> H0;
    std::function<double(double)> H0p;
    std::function<double(double)> H0pp;
    std::function<double(double)> Vs;
    double I_lo = 1e-6;
    double I_hi = 1e12;
    double maslov_mu = 0.0;
};

ResonantSystem hydrogen_system(int s);

struct PendulumParams {
    double I_s = 0.0;
    double Vs = 0.0;
    double H0pp = 0.0;
    double lambda = 0.0;
    double omega = 0.0;
    int s = 1;
    double maslov_mu = 0.0;
    double H0 = 0.0;  // H0(I_s)

    double n0() const { return I_s - 0.25 * maslov_mu; }
    // True when the stable fixed point of cos(s theta_hat) sits at theta_hat = pi.
    bool stable_at_pi() const { return lambda * Vs * H0pp > 0.0; }
};

PendulumParams build_pendulum(const ResonantSystem& system, double omega, int s, double lambda);
// LP drive on the 1D atom at scaled field F0 with n0 = I_s.
PendulumParams hydrogen_pendulum(double n0, double F0, int s = 1);

struct IslandGeometry {
    double delta_I = 0.0;
    double area = 0.0;
    double n_trapped_estimate = 0.0;
    int n_trapped = 0;
    bool boundary_case = false;
};

IslandGeometry island_geometry(const PendulumParams& p);
double predicted_width(const PendulumParams& p);
double mathieu_q(const PendulumParams& p);
// Mathieu exponent of the ladder j, reduced to [-1, 1).
double mathieu_nu(const PendulumParams& p, int j);
double harmonic_frequency(const PendulumParams& p);
double harmonic_levels(const PendulumParams& p, int N, int k);
// Island area from numerical quadrature of the separatrix.
double separatrix_area_numeric(const PendulumParams& p);
// True when (I, theta_hat) lies inside the separatrix of the resonance
// island; theta_hat is the slow angle theta - (omega t + phase0) / s.
bool inside_separatrix(const PendulumParams& p, double I, double theta_hat);

// Semiclassical characteristic value of the Mathieu operator
// -d^2/dv^2 + 2q cos 2v with Bloch exponent nu, for the kappa-th level.
struct EbkValue {
    double a = 0.0;
    bool librational = false;
    bool near_separatrix = false;
    int quantum_number = 0;
};
EbkValue ebk_char_value(double nu, double q, int kappa);

struct EbkLevel {
    int kappa = 0;
    double a = 0.0;
    double quasienergy = 0.0;
    bool librational = false;
    std::string warning;
};

// count lowest EBK levels for boundary exponent nu; quasienergies follow the
// same map as the Mathieu route, E = H0 + (nu/2) omega + (s^2/8) H0'' a.
std::vector<EbkLevel> ebk_levels(const PendulumParams& p, double boundary_exponent, int count);

}  // namespace ndwp::pendulum
