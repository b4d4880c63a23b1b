#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "arnold/catastrophe.hpp"
#include "arnold/potential.hpp"
#include "support.hpp"

namespace arnold::catastrophe {
namespace {

// Outer-minus-central harmonic ground estimate of the N = 2 potential,
// taking depths and curvatures straight from V.
double gap_oracle(double alpha, double beta, double lambda_sq = 1.0) {
  const auto pot = build_potential(ShiftParameters::from_params({alpha, beta}));
  auto half_curv = [&pot](double x) {
    const double h = 1e-3 * (1.0 + std::abs(x));
    return (-pot(x + 2 * h) + 16 * pot(x + h) - 30 * pot(x) + 16 * pot(x - h) - pot(x - 2 * h)) / (24 * h * h);
  };
  const double xo = std::sqrt(alpha * alpha + 2 * beta * beta);
  const double lam = std::sqrt(lambda_sq);
  return (pot(xo) + lam * std::sqrt(half_curv(xo))) - (pot(0.0) + lam * std::sqrt(half_curv(0.0)));
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi), fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

TEST(Gap, HarmonicMatchesOracle) {
  testing::Gen gen(41);
  for (int trial = 0; trial < 25; ++trial) {
    const double alpha = gen.uniform(0.3, 3.0), beta = gen.uniform(0.1, 4.0);
    const FamilyPath path(PathKind::k5_alpha_beta, {{"alpha", alpha}}, "beta", 0.01, 6.0);
    const auto s = gap(path, beta, Estimator::harmonic);
    EXPECT_NEAR(s.gap, gap_oracle(alpha, beta), 1e-6 * (1.0 + std::abs(s.gap)));
  }
}

TEST(CriticalRoot, BothBranchesAtUnitAlpha) {
  const FamilyPath lower(PathKind::k5_alpha_beta, {{"alpha", 1.0}}, "beta", 0.05, 0.5);
  const FamilyPath upper = lower.with_interval(0.9, 1.4);
  auto g = [](double b) { return gap_oracle(1.0, b); };
  const auto a = critical_root(lower, Estimator::harmonic);
  const auto b = critical_root(upper, Estimator::harmonic);
  EXPECT_NEAR(a.value, bisect(g, 0.05, 0.5), 1e-6);
  EXPECT_NEAR(b.value, bisect(g, 0.9, 1.4), 1e-6);
  EXPECT_NEAR(a.value, 0.190889, 1e-6);
  EXPECT_NEAR(b.value, 1.15044, 1e-5);
  EXPECT_TRUE(b.bracketed);
  EXPECT_LT(b.bracket_hi - b.bracket_lo, 1e-8);
}

TEST(CriticalRoot, NoSignChangeThrows) {
  const FamilyPath path(PathKind::k5_alpha_beta, {{"alpha", 1.0}}, "beta", 0.3, 0.9);
  EXPECT_THROW(critical_root(path, Estimator::harmonic), NoCatastrophe);
  // equal depths on the sigma ray: the outer pair is always stiffer
  const FamilyPath sigma(PathKind::k7_sigma, {{"alpha", 1.0}}, "sigma", 0.1, 3.0);
  EXPECT_THROW(critical_root(sigma, Estimator::harmonic), NoCatastrophe);
}

TEST(LocusCurve, BranchLabelsFollowSignDirection) {
  const FamilyPath path(PathKind::k5_alpha_beta, {{"alpha", 1.0}}, "beta", 0.01, 6.0);
  const auto points = locus_curve(path, "alpha", {0.3, 1.0, 1.5, 3.0}, Estimator::harmonic, 600);
  int lower = 0, upper = 0;
  for (const auto& p : points) {
    if (!p.found) continue;
    const double g = gap_oracle(p.fixed_value, p.critical_value + 1e-4);
    if (p.branch == "lower") {
      ++lower;
      EXPECT_GT(g, 0.0);
    } else {
      ++upper;
      EXPECT_LT(g, 0.0);
    }
  }
  EXPECT_EQ(lower, 2);  // alpha = 0.3 and 1
  EXPECT_EQ(upper, 4);
  EXPECT_NEAR(points.back().critical_value / 3.0, 1.0, 0.1);
}

TEST(LocusCurve, EtaThresholdShrinksWithAlpha) {
  const FamilyPath path(PathKind::k7_eta, {{"alpha", 1.0}}, "eta", 0.0, 1.0);
  const auto points = locus_curve(path, "alpha", {1.5, 2.0, 3.0}, Estimator::harmonic, 400);
  ASSERT_EQ(points.size(), 3u);
  for (const auto& p : points) ASSERT_TRUE(p.found);
  EXPECT_NEAR(points[1].critical_value, 0.00142716, 1e-7);
  EXPECT_GT(points[0].critical_value, points[1].critical_value);
  EXPECT_GT(points[1].critical_value, points[2].critical_value);
}

TEST(FamilyPath, RejectsMismatchedKeys) {
  EXPECT_THROW(FamilyPath(PathKind::k7_eta, {{"beta", 1.0}}, "eta", 0, 1), DomainError);
  EXPECT_THROW(FamilyPath(PathKind::k5_alpha_beta, {{"alpha", 1.0}}, "alpha", 0, 1), DomainError);
  EXPECT_THROW(FamilyPath(PathKind::k5_mu_ratio, {{"beta", 1.0}}, "r", 2, 1), DomainError);
  EXPECT_THROW(parse_path_kind("k9"), DomainError);
  EXPECT_EQ(parse_path_kind("k7_sigma"), PathKind::k7_sigma);
  const FamilyPath p(PathKind::k5_mu_ratio, {{"beta", 2.0}, {"lambda_sq", 0.5}}, "r", 0.1, 3.0);
  EXPECT_DOUBLE_EQ(p.lambda_sq(), 0.5);
  EXPECT_DOUBLE_EQ(p.at(0.5).params()[0], 1.0);
}

TEST(Regions, ClassesByParity) {
  EXPECT_EQ(inner_regions(2), std::vector<int>{1});
  EXPECT_EQ(inner_regions(3), (std::vector<int>{1, 2}));
  EXPECT_EQ(outer_regions(3), (std::vector<int>{0, 3}));
  EXPECT_EQ(inner_regions(4), std::vector<int>{2});
}

TEST(Scan, NumericFlipNearHarmonicRoot) {
  const FamilyPath path(PathKind::k5_alpha_beta, {{"alpha", 1.0}}, "beta", 0.9, 1.4);
  const auto scan = relocalization_scan(path, range(0.9, 1.4, 0.025));
  ASSERT_TRUE(scan.flip.has_value());
  EXPECT_NEAR(*scan.flip, 1.15044, 0.2 * 1.15044);
  EXPECT_FALSE(scan.monotone);
  for (const auto& s : scan.samples) EXPECT_EQ(s.ground_parity, spectral::Parity::even);
  EXPECT_EQ(scan.samples.front().dominant, "inner");
  EXPECT_EQ(scan.samples.back().dominant, "outer");
}

TEST(Range, InclusiveEnd) {
  const auto r = range(0.0, 1.0, 0.25);
  ASSERT_EQ(r.size(), 5u);
  EXPECT_DOUBLE_EQ(r.back(), 1.0);
  EXPECT_EQ(range(0.3, 3.0, 0.05).size(), 55u);
  EXPECT_THROW(range(0, 1, 0), DomainError);
}

}  // namespace
}  // namespace arnold::catastrophe
