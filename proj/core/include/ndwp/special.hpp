#pragma once

#include <vector>

namespace ndwp::special {

// Integer-order Bessel functions of the first kind.
double bessel_j(int m, double x);
double bessel_jp(int m, double x);
// J_m(x)/x with the finite limit at x = 0.
double bessel_j_over_x(int m, double x);
// J_0(x) ... J_mmax(x) in one backward sweep.
std::vector<double> bessel_j_sequence(int mmax, double x);

// Radial hydrogen s-state u_n(z) = z R_{n0}(z), normalised on (0, inf).
double hydrogen_u(int n, double z);
// u_n for n = 1..nmax at a single z, by upward Laguerre recurrence.
std::vector<double> hydrogen_u_all(int nmax, double z);

}  // namespace ndwp::special
