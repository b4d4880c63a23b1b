#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "arnold/tridiagonal.hpp"
#include "support.hpp"

namespace arnold::tridiagonal {
namespace {

Eigen::VectorXd dense_eigenvalues(const std::vector<double>& d, const std::vector<double>& e) {
  const int n = static_cast<int>(d.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = d[i];
  for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = e[i];
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly).eigenvalues();
}

TEST(Tridiagonal, MatchesDenseSolverOnRandomMatrices) {
  testing::Gen gen(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = static_cast<int>(gen.integer(2, 60));
    std::vector<double> d(n), e(n - 1);
    for (auto& v : d) v = gen.uniform(-5, 5);
    for (auto& v : e) v = gen.uniform(-2, 2);
    const auto ref = dense_eigenvalues(d, e);
    const int k = std::min(n, 6);
    const auto pairs = lowest_eigenpairs(d, e, k);
    for (int i = 0; i < k; ++i) {
      EXPECT_NEAR(pairs.values[i], ref(i), 1e-11 * (1.0 + std::abs(ref(i))));
      EXPECT_NEAR(eigenvalue(d, e, i), ref(i), 1e-11 * (1.0 + std::abs(ref(i))));
      // residual and orthonormality
      const auto& v = pairs.vectors[i];
      double res = 0.0;
      for (int r = 0; r < n; ++r) {
        double av = d[r] * v[r];
        if (r > 0) av += e[r - 1] * v[r - 1];
        if (r + 1 < n) av += e[r] * v[r + 1];
        res = std::max(res, std::abs(av - pairs.values[i] * v[r]));
      }
      EXPECT_LT(res, 1e-9);
      for (int j = 0; j <= i; ++j) {
        double dot = 0.0;
        for (int r = 0; r < n; ++r) dot += v[r] * pairs.vectors[j][r];
        EXPECT_NEAR(dot, i == j ? 1.0 : 0.0, 1e-9);
      }
    }
  }
}

TEST(Tridiagonal, SturmCountBracketsSpectrum) {
  const std::vector<double> d = {2, 2, 2, 2, 2};
  const std::vector<double> e = {-1, -1, -1, -1};
  // 2 - 2 cos(k pi / 6)
  for (int k = 1; k <= 5; ++k) {
    const double lam = 2.0 - 2.0 * std::cos(k * M_PI / 6.0);
    EXPECT_EQ(sturm_count(d, e, lam - 1e-9), k - 1);
    EXPECT_EQ(sturm_count(d, e, lam + 1e-9), k);
  }
  const auto [lo, hi] = gershgorin(d, e);
  EXPECT_LE(lo, 0.0);
  EXPECT_GE(hi, 4.0);
}

TEST(Tridiagonal, NearDegeneratePairsStayOrthogonal) {
  // Wilkinson W21+: eigenvalue pairs agree to many digits
  const int n = 21;
  std::vector<double> d(n), e(n - 1, 1.0);
  for (int i = 0; i < n; ++i) d[i] = std::abs(10.0 - i);
  const auto ref = dense_eigenvalues(d, e);
  const auto pairs = lowest_eigenpairs(d, e, n);
  for (int i = 0; i < n; ++i) EXPECT_NEAR(pairs.values[i], ref(i), 1e-11);
  const int top = n - 1, next = n - 2;
  double dot = 0.0;
  for (int r = 0; r < n; ++r) dot += pairs.vectors[top][r] * pairs.vectors[next][r];
  EXPECT_NEAR(dot, 0.0, 1e-9);
}

TEST(Tridiagonal, RejectsBadShapes) {
  const std::vector<double> d = {1, 2, 3};
  const std::vector<double> e = {1};
  EXPECT_THROW(lowest_eigenpairs(d, e, 1), std::exception);
  const std::vector<double> e2 = {1, 1};
  EXPECT_THROW(lowest_eigenpairs(d, e2, 4), std::exception);
}

}  // namespace
}  // namespace arnold::tridiagonal
