#include "ndwp/banded.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include <Eigen/Dense>
#include <lapacke.h>

#include "ndwp/errors.hpp"

namespace ndwp::linalg {

SymmetricBanded::SymmetricBanded(int n, int kd) : n_(n), kd_(kd) {
    if (n < 1 || kd < 0) throw DomainError("SymmetricBanded: invalid dimensions");
    kd_ = std::min(kd, n - 1);
    ab_.assign(static_cast<std::size_t>(kd_ + 1) * static_cast<std::size_t>(n_), 0.0);
}

double SymmetricBanded::get(int i, int j) const {
    if (i < j) std::swap(i, j);
    if (i - j > kd_) return 0.0;
    return ab_[static_cast<std::size_t>(i - j) + static_cast<std::size_t>(j) * (kd_ + 1)];
}

void SymmetricBanded::set(int i, int j, double v) {
    if (i < j) std::swap(i, j);
    if (i - j > kd_ || i >= n_ || j < 0) throw DomainError("SymmetricBanded::set: outside band");
    ab_[static_cast<std::size_t>(i - j) + static_cast<std::size_t>(j) * (kd_ + 1)] = v;
}

void SymmetricBanded::add_diagonal(int i, double v) {
    ab_[static_cast<std::size_t>(i) * (kd_ + 1)] += v;
}

void SymmetricBanded::multiply(const double* x, double* y) const {
    std::fill(y, y + n_, 0.0);
    for (int j = 0; j < n_; ++j) {
        const double* col = &ab_[static_cast<std::size_t>(j) * (kd_ + 1)];
        y[j] += col[0] * x[j];
        const int imax = std::min(n_ - 1, j + kd_);
        for (int i = j + 1; i <= imax; ++i) {
            const double a = col[i - j];
            y[i] += a * x[j];
            y[j] += a * x[i];
        }
    }
}

std::vector<double> SymmetricBanded::dense_column_major() const {
    std::vector<double> d(static_cast<std::size_t>(n_) * n_, 0.0);
    for (int j = 0; j < n_; ++j)
        for (int i = j; i <= std::min(n_ - 1, j + kd_); ++i) {
            const double a = get(i, j);
            d[static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * n_] = a;
            d[static_cast<std::size_t>(j) + static_cast<std::size_t>(i) * n_] = a;
        }
    return d;
}

EigenPairs eig_dense(const SymmetricBanded& A) {
    const int n = A.size();
    const auto d = A.dense_column_major();
    Eigen::Map<const Eigen::MatrixXd> M(d.data(), n, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    if (es.info() != Eigen::Success) throw AccuracyError("eig_dense: eigen-solver failed", 0.0);
    EigenPairs out;
    out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    out.vectors.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const auto col = es.eigenvectors().col(k);
        out.vectors[static_cast<std::size_t>(k)].assign(col.data(), col.data() + n);
    }
    return out;
}

namespace {

class ShiftInvert {
public:
    ShiftInvert(const SymmetricBanded& A, double sigma) : n_(A.size()), k_(A.bandwidth()) {
        ldab_ = 2 * k_ + k_ + 1;
        ab_.assign(static_cast<std::size_t>(ldab_) * n_, 0.0);
        ipiv_.assign(static_cast<std::size_t>(n_), 0);
        for (int j = 0; j < n_; ++j) {
            const int i0 = std::max(0, j - k_);
            const int i1 = std::min(n_ - 1, j + k_);
            for (int i = i0; i <= i1; ++i) {
                double v = A.get(i, j);
                if (i == j) v -= sigma;
                ab_[static_cast<std::size_t>(2 * k_ + i - j) + static_cast<std::size_t>(j) * ldab_] = v;
            }
        }
        const lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n_, n_, k_, k_, ab_.data(), ldab_, ipiv_.data());
        if (info != 0) throw AccuracyError("eig_near: shift coincides with an eigenvalue", 0.0);
    }

    void solve(std::vector<double>& x) const {
        const lapack_int info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n_, k_, k_, 1, ab_.data(), ldab_,
                                               ipiv_.data(), x.data(), n_);
        if (info != 0) throw AccuracyError("eig_near: banded solve failed", 0.0);
    }

private:
    int n_;
    int k_;
    int ldab_ = 0;
    std::vector<double> ab_;
    std::vector<lapack_int> ipiv_;
};

double dotv(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

EigenPairs eig_near(const SymmetricBanded& A, double sigma, int count, const LanczosOptions& opt) {
    const int n = A.size();
    if (count < 1) throw DomainError("eig_near: count must be >= 1");
    count = std::min(count, n);
    ShiftInvert op(A, sigma);
    int m = std::min(n, std::max(opt.min_steps, 3 * count + 20));
    std::vector<double> Av(static_cast<std::size_t>(n));
    for (;;) {
        std::vector<std::vector<double>> V;
        V.reserve(static_cast<std::size_t>(m) + 1);
        std::vector<double> alpha, beta;
        std::vector<double> v(static_cast<std::size_t>(n));
        std::uint64_t state = 0x9E3779B97F4A7C15ULL;
        for (int i = 0; i < n; ++i) {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            v[static_cast<std::size_t>(i)] = 1.0 + static_cast<double>(state >> 11) * 0x1.0p-53;
        }
        double nv = std::sqrt(dotv(v, v));
        for (double& x : v) x /= nv;
        V.push_back(v);
        int steps = 0;
        for (int j = 0; j < m; ++j) {
            std::vector<double> w = V[static_cast<std::size_t>(j)];
            op.solve(w);
            const double a = dotv(w, V[static_cast<std::size_t>(j)]);
            alpha.push_back(a);
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& u : V) {
                    const double c = dotv(w, u);
                    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] -= c * u[static_cast<std::size_t>(i)];
                }
            const double b = std::sqrt(dotv(w, w));
            steps = j + 1;
            if (j + 1 == m || b < 1e-14 * std::abs(a)) break;
            beta.push_back(b);
            for (double& x : w) x /= b;
            V.push_back(std::move(w));
        }
        Eigen::VectorXd d(steps), e(std::max(steps - 1, 0));
        for (int i = 0; i < steps; ++i) d(i) = alpha[static_cast<std::size_t>(i)];
        for (int i = 0; i + 1 < steps; ++i) e(i) = beta[static_cast<std::size_t>(i)];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
        std::vector<int> order(static_cast<std::size_t>(steps));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return std::abs(es.eigenvalues()(a)) > std::abs(es.eigenvalues()(b));
        });
        const int take = std::min(count, steps);
        EigenPairs out;
        bool converged = true;
        for (int r = 0; r < take; ++r) {
            const int idx = order[static_cast<std::size_t>(r)];
            const double theta = es.eigenvalues()(idx);
            std::vector<double> x(static_cast<std::size_t>(n), 0.0);
            for (int j = 0; j < steps; ++j) {
                const double c = es.eigenvectors()(j, idx);
                const auto& u = V[static_cast<std::size_t>(j)];
                for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] += c * u[static_cast<std::size_t>(i)];
            }
            const double nx = std::sqrt(dotv(x, x));
            for (double& t : x) t /= nx;
            A.multiply(x.data(), Av.data());
            const double lam = dotv(x, Av);
            double res = 0.0;
            for (int i = 0; i < n; ++i) {
                const double r2 = Av[static_cast<std::size_t>(i)] - lam * x[static_cast<std::size_t>(i)];
                res += r2 * r2;
            }
            res = std::sqrt(res);
            const double scale = std::max(std::abs(lam), 1.0 / std::abs(theta));
            if (res > opt.tol * std::max(scale, 1e-300) && res > 1e-14) converged = false;
            out.values.push_back(lam);
            out.vectors.push_back(std::move(x));
        }
        if ((converged && take == count) || m >= n || m >= opt.max_steps) {
            std::vector<int> idx(out.values.size());
            std::iota(idx.begin(), idx.end(), 0);
            std::sort(idx.begin(), idx.end(), [&](int a, int b) { return out.values[a] < out.values[b]; });
            EigenPairs sorted;
            for (int i : idx) {
                sorted.values.push_back(out.values[static_cast<std::size_t>(i)]);
                sorted.vectors.push_back(std::move(out.vectors[static_cast<std::size_t>(i)]));
            }
            return sorted;
        }
        m = std::min({n, 2 * m, opt.max_steps});
    }
}

}  // namespace ndwp::linalg
