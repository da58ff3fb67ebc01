#pragma once

#include <vector>

#include "ndwp/pendulum.hpp"

namespace ndwp::mathieu {

struct MathieuSpectrum {
    double nu = 0.0;
    double q = 0.0;
    std::vector<double> values;
    int truncation = 0;  // basis half-size M, exponents 2m + nu with |m| <= M
};

// Exponent reduced to [-1, 1).
double reduce_exponent(double nu);

// Characteristic values of -d^2/dv^2 + 2q cos 2v on Bloch functions with
// y(v + pi) = exp(i pi nu) y(v), ascending.
MathieuSpectrum mathieu_char_values(double nu, double q, int count, int max_half_size = 1 << 14);
double mathieu_a(double nu, double q, int kappa);
double mathieu_asymptotic(int kappa, double q);

struct MathieuMap {
    double q = 0.0;
    double nu = 0.0;
    double n0 = 0.0;
};
MathieuMap mathieu_map(const pendulum::PendulumParams& p, int j);

double quasienergy_from_mathieu(const pendulum::PendulumParams& p, int kappa, int j);

}  // namespace ndwp::mathieu
