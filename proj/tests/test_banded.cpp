#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "ndwp/banded.hpp"
#include "ndwp/errors.hpp"

using namespace ndwp;

namespace {

linalg::SymmetricBanded random_banded(int n, int kd, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    linalg::SymmetricBanded A(n, kd);
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - kd); j <= i; ++j) A.set(i, j, i == j ? 4.0 * u(rng) + 0.01 * i : u(rng));
    return A;
}

Eigen::MatrixXd to_eigen(const linalg::SymmetricBanded& A) {
    const auto d = A.dense_column_major();
    return Eigen::Map<const Eigen::MatrixXd>(d.data(), A.size(), A.size());
}

}  // namespace

TEST(Banded, StorageIsSymmetric) {
    linalg::SymmetricBanded A(5, 1);
    A.set(0, 1, 2.0);
    A.add_diagonal(3, 1.5);
    A.add_diagonal(3, 1.5);
    EXPECT_EQ(A.get(1, 0), 2.0);
    EXPECT_EQ(A.get(0, 1), 2.0);
    EXPECT_EQ(A.get(3, 3), 3.0);
    EXPECT_EQ(A.get(0, 4), 0.0);
    EXPECT_THROW(A.set(0, 3, 1.0), DomainError);
}

TEST(Banded, MultiplyMatchesDense) {
    const auto A = random_banded(40, 3, 7);
    std::vector<double> x(40), y(40);
    for (int i = 0; i < 40; ++i) x[i] = std::sin(0.3 * i);
    A.multiply(x.data(), y.data());
    const Eigen::VectorXd ref = to_eigen(A) * Eigen::Map<Eigen::VectorXd>(x.data(), 40);
    for (int i = 0; i < 40; ++i) EXPECT_NEAR(y[i], ref(i), 1e-12);
}

TEST(Banded, DenseSolverMatchesEigen) {
    const auto A = random_banded(60, 4, 11);
    const auto ep = linalg::eig_dense(A);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(A));
    ASSERT_EQ(ep.values.size(), 60u);
    for (int i = 0; i < 60; ++i) EXPECT_NEAR(ep.values[i], es.eigenvalues()(i), 1e-10);
}

TEST(Banded, ShiftInvertFindsNearestPairs) {
    const auto A = random_banded(400, 5, 3);
    const auto all = linalg::eig_dense(A);
    const double sigma = 0.37;
    const auto near = linalg::eig_near(A, sigma, 6);
    ASSERT_EQ(near.values.size(), 6u);
    std::vector<double> ref = all.values;
    std::sort(ref.begin(), ref.end(), [&](double a, double b) { return std::abs(a - sigma) < std::abs(b - sigma); });
    std::vector<double> got = near.values;
    std::sort(got.begin(), got.end(), [&](double a, double b) { return std::abs(a - sigma) < std::abs(b - sigma); });
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(got[i], ref[i], 1e-9);
    // Residuals of the returned vectors.
    std::vector<double> y(400);
    for (std::size_t k = 0; k < near.values.size(); ++k) {
        A.multiply(near.vectors[k].data(), y.data());
        double r = 0.0, nrm = 0.0;
        for (int i = 0; i < 400; ++i) {
            r += std::pow(y[i] - near.values[k] * near.vectors[k][i], 2);
            nrm += near.vectors[k][i] * near.vectors[k][i];
        }
        EXPECT_NEAR(nrm, 1.0, 1e-10);
        EXPECT_LT(std::sqrt(r), 1e-8);
    }
}
