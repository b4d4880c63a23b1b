#include <gtest/gtest.h>

#include <cmath>

#include "arnold/perturbation.hpp"
#include "arnold/potential.hpp"
#include "support.hpp"

namespace arnold::perturbation {
namespace {

using testing::Gen;
using testing::rel_diff;

// V''(x) / 2 by a five-point stencil.
double half_curvature(const ArnoldPotential& pot, double x) {
  const double h = 1e-3 * (1.0 + std::abs(x));
  const double d2 = (-pot.evaluate(x + 2 * h) + 16 * pot.evaluate(x + h) - 30 * pot.evaluate(x) +
                     16 * pot.evaluate(x - h) - pot.evaluate(x - 2 * h)) /
                    (12 * h * h);
  return d2 / 2.0;
}

TEST(WellModels, DoubleWellClosedForm) {
  // N = 1: minima -alpha^4 at +-alpha, t2 = 4 alpha^2
  for (double alpha : {0.5, 1.0, 3.0}) {
    const auto wells = well_models(ShiftParameters::from_params({alpha}));
    ASSERT_EQ(wells.size(), 1u);
    EXPECT_NEAR(wells[0].x_min, alpha, 1e-12);
    EXPECT_NEAR(wells[0].depth, -std::pow(alpha, 4), 1e-12 * std::pow(alpha, 4));
    EXPECT_NEAR(wells[0].omega_sq, 4 * alpha * alpha, 1e-10);
    EXPECT_EQ(wells[0].multiplicity, Multiplicity::pair);
    const auto levels = harmonic_levels(wells[0], 2);
    EXPECT_NEAR(levels[0], -std::pow(alpha, 4) + 2 * alpha, 1e-10);
    EXPECT_NEAR(levels[2] - levels[1], 4 * alpha, 1e-10);
  }
}

TEST(WellModels, CurvaturesAgreeWithFiniteDifferences) {
  Gen gen(29);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = static_cast<int>(gen.integer(1, 4));
    std::vector<double> params(n);
    for (auto& p : params) p = gen.uniform(0.5, 1.5);
    const auto shift = ShiftParameters::from_params(params);
    const auto pot = build_potential(shift, {.lambda_sq = 0.5});
    const auto wells = well_models(pot);
    EXPECT_EQ(wells.size(), static_cast<std::size_t>(n / 2 + 1));
    for (const auto& w : wells) {
      EXPECT_LT(rel_diff(w.omega_sq, half_curvature(pot, w.x_min)), 1e-6);
      EXPECT_NEAR(w.depth, pot.evaluate(w.x_min), 1e-9 * (1.0 + std::abs(w.depth)));
      EXPECT_NEAR(w.lambda, std::sqrt(0.5), 1e-15);
      EXPECT_EQ(w.multiplicity, w.x_min == 0.0 ? Multiplicity::central : Multiplicity::pair);
    }
  }
}

TEST(GapFormula, EqualsCurvatureDifference) {
  Gen gen(31);
  for (int trial = 0; trial < 100; ++trial) {
    const double alpha = gen.uniform(0.1, 4.0), sigma = gen.uniform(0.05, 4.0);
    const int n = static_cast<int>(gen.integer(0, 10));
    EXPECT_LT(rel_diff(doublet_gap_formula(alpha, sigma, n), doublet_gap_curvature(alpha, sigma, n)), 1e-12);
  }
}

TEST(GapFormula, MatchesWellModels) {
  const double alpha = 1.3, sigma = 0.7;
  const auto shift = ShiftParameters::from_params({alpha, sigma * alpha, sigma * alpha});
  const auto wells = well_models(shift);
  ASSERT_EQ(wells.size(), 2u);
  const double omega = std::sqrt(wells[0].omega_sq), big = std::sqrt(wells[1].omega_sq);
  EXPECT_LT(rel_diff(doublet_gap_formula(shift, 1), 3 * (big - omega)), 1e-9);
  EXPECT_THROW(doublet_gap_formula(ShiftParameters::from_params({1.0, 0.5, 0.6}), 0), DomainError);
}

TEST(GroundEstimates, AgreeWithWellModels) {
  Gen gen(37);
  for (int trial = 0; trial < 30; ++trial) {
    const double alpha = gen.uniform(0.2, 3.0), beta = gen.uniform(0.2, 3.0);
    const auto shift = ShiftParameters::from_params({alpha, beta});
    const double lsq = gen.scale(0.01, 1.0);
    const auto est = ground_energy_estimates_k5(shift, lsq);
    const auto wells = well_models(shift, lsq);
    ASSERT_EQ(wells.size(), 2u);
    EXPECT_LT(rel_diff(est.central, harmonic_levels(wells[0], 0)[0]), 1e-10);
    EXPECT_NEAR(est.outer, harmonic_levels(wells[1], 0)[0], 1e-9 * (1.0 + std::abs(est.outer)));
  }
}

TEST(CubicCoupling, DocumentedExpressions) {
  const double alpha = 0.6, beta = 1.1;
  const auto c = cubic_coupling(ShiftParameters::from_params({alpha, beta}));
  const double r2 = alpha * alpha + 2 * beta * beta, r = std::sqrt(r2);
  EXPECT_NEAR(std::pow(c.rho, 4), 1.0 / (12 * r2 * beta * beta), 1e-14);
  EXPECT_NEAR(c.lambda_cubic, 4 * r * std::pow(c.rho, 5) * (2 * r2 + 3 * beta * beta), 1e-12);
  EXPECT_NEAR(c.lower, 7 * c.rho / (3 * r), 1e-14);
  EXPECT_NEAR(c.upper, 9 * c.rho / (3 * r), 1e-14);
  EXPECT_TRUE(c.hypothesis);
  EXPECT_THROW(cubic_coupling(ShiftParameters::from_params({1.0, 1.0, 1.0})), DomainError);
}

}  // namespace
}  // namespace arnold::perturbation
