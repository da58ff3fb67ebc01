#pragma once

#include <vector>

namespace ndwp::linalg {

// Real symmetric band matrix, lower band stored column by column
// (LAPACK "SB" layout with uplo = L).
class SymmetricBanded {
public:
    SymmetricBanded() = default;
    SymmetricBanded(int n, int kd);

    int size() const noexcept { return n_; }
    int bandwidth() const noexcept { return kd_; }

    double get(int i, int j) const;
    // Sets A(i,j) = A(j,i) = v; requires |i - j| <= kd.
    void set(int i, int j, double v);
    void add_diagonal(int i, double v);

    void multiply(const double* x, double* y) const;
    std::vector<double> dense_column_major() const;
    const std::vector<double>& band_data() const noexcept { return ab_; }

private:
    int n_ = 0;
    int kd_ = 0;
    std::vector<double> ab_;
};

struct EigenPairs {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
};

EigenPairs eig_dense(const SymmetricBanded& A);

struct LanczosOptions {
    double tol = 1e-10;
    int min_steps = 60;
    int max_steps = 2000;
};

// count eigenpairs closest to sigma via shift-invert Lanczos with full
// reorthogonalisation on a banded LU factorisation of A - sigma.
EigenPairs eig_near(const SymmetricBanded& A, double sigma, int count, const LanczosOptions& opt = {});

}  // namespace ndwp::linalg
