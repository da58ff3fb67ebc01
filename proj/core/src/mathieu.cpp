#include "ndwp/mathieu.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "ndwp/errors.hpp"

namespace ndwp::mathieu {
namespace {

std::vector<double> tridiagonal_eigenvalues(double nu, double q, int M) {
    const int n = 2 * M + 1;
    Eigen::VectorXd diag(n);
    Eigen::VectorXd off(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) {
        const double k = 2.0 * (i - M) + nu;
        diag(i) = k * k;
    }
    off.setConstant(q);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

}  // namespace

double reduce_exponent(double nu) {
    double r = std::fmod(nu + 1.0, 2.0);
    if (r < 0.0) r += 2.0;
    return r - 1.0;
}

MathieuSpectrum mathieu_char_values(double nu, double q, int count, int max_half_size) {
    if (count < 1) throw DomainError("mathieu_char_values: count must be >= 1");
    nu = reduce_exponent(nu);
    MathieuSpectrum out;
    out.nu = nu;
    out.q = q;
    int M = std::max(count + 8, static_cast<int>(std::ceil(2.0 * std::sqrt(std::abs(q)))) + count / 2 + 8);
    std::vector<double> prev = tridiagonal_eigenvalues(nu, q, M);
    double change = 0.0;
    while (true) {
        const int M2 = 2 * M;
        std::vector<double> cur = tridiagonal_eigenvalues(nu, q, M2);
        change = 0.0;
        for (int k = 0; k < count; ++k)
            change = std::max(change, std::abs(cur[k] - prev[k]) / std::max(1.0, std::abs(cur[k])));
        M = M2;
        prev.swap(cur);
        if (change < 1e-10) break;
        if (2 * M > max_half_size)
            throw AccuracyError("mathieu_char_values: truncation limit reached", change);
    }
    out.values.assign(prev.begin(), prev.begin() + count);
    out.truncation = M;
    return out;
}

double mathieu_a(double nu, double q, int kappa) {
    if (kappa < 0) throw DomainError("mathieu_a: kappa must be >= 0");
    return mathieu_char_values(nu, q, kappa + 1).values.back();
}

double mathieu_asymptotic(int kappa, double q) {
    if (q == 0.0) throw DomainError("mathieu_asymptotic: q must be nonzero");
    const double aq = std::abs(q);
    return -2.0 * aq + 4.0 * (kappa + 0.5) * std::sqrt(aq);
}

MathieuMap mathieu_map(const pendulum::PendulumParams& p, int j) {
    if (j < 0 || j >= p.s) throw DomainError("mathieu_map: ladder index must lie in 0..s-1");
    return {pendulum::mathieu_q(p), pendulum::mathieu_nu(p, j), p.n0()};
}

double quasienergy_from_mathieu(const pendulum::PendulumParams& p, int kappa, int j) {
    const auto mm = mathieu_map(p, j);
    const double a = mathieu_a(mm.nu, mm.q, kappa);
    const double s = p.s;
    return p.H0 - (mm.n0 - j) * p.omega / s + s * s / 8.0 * p.H0pp * a;
}

}  // namespace ndwp::mathieu
