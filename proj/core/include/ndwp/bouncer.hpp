#pragma once

#include <vector>

#include "ndwp/pendulum.hpp"

namespace ndwp::bouncer {

struct BouncerParams {
    double lambda = 0.0;
    double omega = 1.0;
    int s = 1;
    void validate() const;
};

struct BouncerH0 {
    double energy = 0.0;
    double frequency = 0.0;
    double curvature = 0.0;  // d^2 H0 / dI^2
};

struct BouncerResonance {
    double omega = 0.0;
    double I_s = 0.0;
};

BouncerH0 bouncer_h0(double I);
BouncerResonance bouncer_resonance(int s, double n0);
// Magnitude of the s-th Fourier coefficient of the height.
double bouncer_vs(double I, int s);
pendulum::PendulumParams bouncer_pendulum(double n0, double lambda, int s);

double tunneling_splitting(double lambda, double omega);
// Splitting of the s = 2 doublet from the two Mathieu ladders nu = 0 and 1.
double mathieu_splitting(double lambda, double n0);

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double analytic = 0.0;
};
// Least-squares line through log(Delta) against sqrt(lambda).
SlopeFit splitting_slope(double omega, const std::vector<double>& lambdas);

// State just after a bounce: upward momentum and drive phase omega t.
struct BounceState {
    double p = 0.0;
    double phase = 0.0;
};

// Exact flight in the frame where the plane is at rest and gravity is
// modulated as 1 - lambda sin(phase).
BounceState bounce_map(const BounceState& st, double lambda, double omega);
// Kicked approximation in wall-frame momentum.
BounceState standard_map(const BounceState& st, double lambda, double omega);
double wall_momentum(const BounceState& st, double lambda, double omega);

inline double action_at_bounce(double p) { return p * p * p / (3.0 * 3.14159265358979323846); }

struct BounceOrbit {
    std::vector<BounceState> points;
    bool librational = false;
    double I_min = 0.0;
    double I_max = 0.0;
};

// Iterates the exact map; librational when phase - 2 pi k n stays in a
// window narrower than 2 pi, where k is the winding number of the resonance.
BounceOrbit bounce_orbit(const BounceState& start, double lambda, double omega, int n_bounces, int k = 1);

struct BounceIsland {
    double width_I = 0.0;
    double predicted_width_I = 0.0;
    int librational_seeds = 0;
};
BounceIsland bounce_island_width(double n0, double lambda, int n_seeds = 41, int n_bounces = 400);

}  // namespace ndwp::bouncer
