#include "ndwp/special.hpp"

#include <cmath>
#include <cstdlib>

#include "ndwp/errors.hpp"

namespace ndwp::special {
namespace {

double series_j(int m, double x) {
    const double h = 0.5 * x;
    double lead = 1.0;
    for (int k = 1; k <= m; ++k) lead *= h / k;
    const double h2 = h * h;
    double term = lead;
    double sum = lead;
    for (int k = 1; k < 200; ++k) {
        term *= -h2 / (static_cast<double>(k) * (k + m));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// Backward recurrence from a start order well above max(m, x); the values are
// normalised with J_0 + 2 sum J_{2k} = 1.
std::vector<double> miller(int mmax, double x) {
    const int top = std::max(mmax, static_cast<int>(x));
    int start = top + 20 + static_cast<int>(std::sqrt(40.0 * (top + 1)));
    start += start % 2;
    std::vector<double> j(static_cast<std::size_t>(mmax) + 1, 0.0);
    double jp1 = 0.0;
    double jc = 1e-300;
    double norm = 0.0;
    const double two_over_x = 2.0 / x;
    for (int k = start; k >= 1; --k) {
        const double jm1 = k * two_over_x * jc - jp1;
        jp1 = jc;
        jc = jm1;
        if (k - 1 <= mmax) j[static_cast<std::size_t>(k - 1)] = jc;
        if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * jc;
        if (std::abs(jc) > 1e250) {
            jc *= 1e-250;
            jp1 *= 1e-250;
            norm *= 1e-250;
            for (double& v : j) v *= 1e-250;
        }
    }
    norm += jc;
    for (double& v : j) v /= norm;
    return j;
}

double j_nonneg(int m, double x) {
    if (x == 0.0) return m == 0 ? 1.0 : 0.0;
    if (x < 2.0) return series_j(m, x);
    return miller(m, x)[static_cast<std::size_t>(m)];
}

}  // namespace

std::vector<double> bessel_j_sequence(int mmax, double x) {
    if (mmax < 0) throw DomainError("bessel_j_sequence: negative order");
    if (x < 0.0) {
        auto v = bessel_j_sequence(mmax, -x);
        for (int m = 1; m <= mmax; m += 2) v[static_cast<std::size_t>(m)] = -v[static_cast<std::size_t>(m)];
        return v;
    }
    if (x < 2.0) {
        std::vector<double> v(static_cast<std::size_t>(mmax) + 1);
        for (int m = 0; m <= mmax; ++m) v[static_cast<std::size_t>(m)] = j_nonneg(m, x);
        return v;
    }
    return miller(mmax, x);
}

double bessel_j(int m, double x) {
    double sign = 1.0;
    if (m < 0) {
        m = -m;
        if (m % 2) sign = -sign;
    }
    if (x < 0.0) {
        x = -x;
        if (m % 2) sign = -sign;
    }
    return sign * j_nonneg(m, x);
}

double bessel_jp(int m, double x) {
    if (m == 0) return -bessel_j(1, x);
    return 0.5 * (bessel_j(m - 1, x) - bessel_j(m + 1, x));
}

double bessel_j_over_x(int m, double x) {
    if (m == 0) {
        if (x == 0.0) throw DomainError("bessel_j_over_x: J_0(x)/x diverges at x = 0");
        return bessel_j(0, x) / x;
    }
    double sign = 1.0;
    if (m < 0) {
        m = -m;
        if (m % 2) sign = -sign;
    }
    // J_m(x)/x is even in x for odd m and odd for even m.
    if (x < 0.0) {
        x = -x;
        if (m % 2 == 0) sign = -sign;
    }
    if (x >= 2.0) return sign * j_nonneg(m, x) / x;
    const double h = 0.5 * x;
    double lead = 0.5;
    for (int k = 1; k < m; ++k) lead *= h / k;
    lead /= m;
    const double h2 = h * h;
    double term = lead;
    double sum = lead;
    for (int k = 1; k < 200; ++k) {
        term *= -h2 / (static_cast<double>(k) * (k + m));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sign * sum;
}

std::vector<double> hydrogen_u_all(int nmax, double z) {
    if (nmax < 1) throw DomainError("hydrogen_u_all: nmax must be >= 1");
    if (z < 0.0) throw DomainError("hydrogen_u_all: z must be non-negative");
    std::vector<double> out(static_cast<std::size_t>(nmax));
    for (int n = 1; n <= nmax; ++n) out[static_cast<std::size_t>(n - 1)] = hydrogen_u(n, z);
    return out;
}

double hydrogen_u(int n, double z) {
    if (n < 1) throw DomainError("hydrogen_u: n must be >= 1");
    if (z <= 0.0) return 0.0;
    // L^{(1)}_{n-1}(x) by upward recurrence, rescaled to avoid overflow; the
    // accumulated log-scale is folded into the exponential prefactor.
    const double x = 2.0 * z / n;
    double lm1 = 1.0;
    double l = 2.0 - x;
    double log_scale = 0.0;
    if (n == 1) {
        l = lm1;
    } else {
        for (int k = 1; k < n - 1; ++k) {
            const double next = ((2.0 * k + 2.0 - x) * l - (k + 1.0) * lm1) / (k + 1.0);
            lm1 = l;
            l = next;
            const double a = std::abs(l);
            if (a > 1e200) {
                lm1 /= a;
                l /= a;
                log_scale += std::log(a);
            }
        }
    }
    if (l == 0.0) return 0.0;
    const double log_mag = std::log(2.0) - 2.5 * std::log(static_cast<double>(n)) + std::log(z) -
                           z / n + log_scale + std::log(std::abs(l));
    const double v = std::exp(log_mag);
    return l < 0.0 ? -v : v;
}

}  // namespace ndwp::special
