#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "arnold/potential.hpp"
#include "arnold/spectral.hpp"
#include "support.hpp"

namespace arnold::spectral {
namespace {

const auto harmonic = [](double x) { return x * x; };
const auto quartic = [](double x) { return x * x * x * x; };

// Ground state of -psi'' + x^4 psi (literature value to 16 digits).
constexpr double kQuarticGround = 1.0603620904841829;

TEST(Solve, HarmonicOscillatorLevels) {
  const auto r = solve(harmonic, {10.0, 8001}, 6);
  for (int n = 0; n < 6; ++n) {
    EXPECT_NEAR(r.energies[n], 2 * n + 1, 1e-4) << n;
    EXPECT_EQ(r.parities[n], n % 2 ? Parity::odd : Parity::even);
    EXPECT_EQ(r.node_counts[n], n);
    double norm = 0.0;
    for (double p : r.wavefunctions[n]) norm += p * p;
    EXPECT_NEAR(norm * r.grid.step(), 1.0, 1e-12);
  }
  // no regions given: one box-wide region
  ASSERT_EQ(r.regions.size(), 1u);
  EXPECT_NEAR(r.localization[3][0], 1.0, 1e-12);
}

TEST(Solve, LambdaScalesSpectrum) {
  GridSpec g{10.0, 4001};
  g.lambda_sq = 0.25;
  const auto r = solve(harmonic, g, 3);
  // -(1/4) psi'' + x^2 psi: E = (2n+1)/2
  for (int n = 0; n < 3; ++n) EXPECT_NEAR(r.energies[n], (2 * n + 1) * 0.5, 1e-4);
}

TEST(Solve, QuarticGroundEnergyConverges) {
  const auto study = convergence_study(quartic, {6.0, 2001}, 3, 3);
  EXPECT_NEAR(study.extrapolated[0], kQuarticGround, 1e-8);
  for (const auto& level : study.ratios) {
    for (double q : level) {
      EXPECT_GE(q, 3.5);
      EXPECT_LE(q, 4.5);
    }
  }
  EXPECT_TRUE(study.warnings.empty());
  EXPECT_EQ(study.points, (std::vector<int>{2001, 4003, 8007, 16015}));
}

TEST(Solve, HarmonicRichardsonRatios) {
  const auto study = convergence_study(harmonic, {10.0, 1001}, 3, 6);
  ASSERT_EQ(study.ratios.size(), 2u);
  for (const auto& level : study.ratios) {
    for (double q : level) EXPECT_NEAR(q, 4.0, 0.5);
  }
  for (int n = 0; n < 6; ++n) EXPECT_NEAR(study.extrapolated[n], 2 * n + 1, 1e-6);
}

TEST(Solve, OffsetGridIsNotParityClassified) {
  GridSpec g{10.0, 4001};
  g.offset = 1.0;
  const auto r = solve([](double x) { return (x - 1.0) * (x - 1.0); }, g, 2);
  EXPECT_NEAR(r.energies[0], 1.0, 1e-4);
  EXPECT_EQ(r.parities[0], Parity::indeterminate);
}

TEST(Solve, BoundaryLeakIsReported) {
  // E_5 = 11 < V(4) = 16, but psi_5 has not decayed at the wall
  EXPECT_THROW(solve(harmonic, {4.0, 2001}, 6), NumericalError);
  SolveOptions lax;
  lax.check_boundary = false;
  EXPECT_NO_THROW(solve(harmonic, {4.0, 2001}, 6, lax));
  // levels above the wall value are never trusted
  EXPECT_THROW(solve(harmonic, {2.0, 2001}, 6, lax), NumericalError);
}

TEST(Solve, InputValidation) {
  EXPECT_THROW(solve(harmonic, {10.0, 10}, 1), DomainError);
  EXPECT_THROW(solve(harmonic, {-1.0, 1001}, 1), DomainError);
  EXPECT_THROW(solve(harmonic, {10.0, 1001}, 0), DomainError);
  GridSpec g{10.0, 1001};
  g.lambda_sq = -1.0;
  EXPECT_THROW(solve(harmonic, g, 1), DomainError);
  SolveOptions gaps;
  gaps.regions = {{-10.0, 0.0}, {1.0, 10.0}};
  EXPECT_THROW(solve(harmonic, {10.0, 1001}, 1, gaps), DomainError);
}

TEST(DoubleWell, DoubletIsEvenBelowOdd) {
  // N = 1, alpha = 2: V = x^4 - 8 x^2, minima -16 at +-2
  const auto pot = build_potential(ShiftParameters::from_params({2.0}));
  const auto r = solve(pot, auto_grid(pot, 4), 4);
  ASSERT_EQ(r.regions.size(), 2u);
  EXPECT_EQ(r.parities[0], Parity::even);
  EXPECT_EQ(r.parities[1], Parity::odd);
  ASSERT_FALSE(r.splittings.empty());
  EXPECT_EQ(r.splittings[0].lower, 0);
  EXPECT_EQ(r.splittings[0].upper, 1);
  EXPECT_GT(r.splittings[0].splitting, 0.0);
  EXPECT_NEAR(r.splittings[0].splitting, r.energies[1] - r.energies[0], 1e-15);
  EXPECT_NEAR(r.localization[0][0], 0.5, 1e-9);
  // leading harmonic estimate -16 + 2 sqrt(16) = -8 for the pair
  EXPECT_NEAR(r.energies[0], -16.0 + 4.0, 0.5);
}

TEST(DoubleWell, AutoGridAgreesWithFineGrid) {
  const auto pot = build_potential(ShiftParameters::from_params({1.0, 1.0, 1.0}));
  const auto a = solve(pot, auto_grid(pot, 6), 6);
  const auto study = convergence_study(pot, {3.6, 8001}, 2, 6);
  for (int n = 0; n < 6; ++n) EXPECT_NEAR(a.energies[n], study.extrapolated[n], 2e-3 * (1.0 + std::abs(a.energies[n])));
  ASSERT_EQ(a.regions.size(), 4u);
  for (const auto& row : a.localization) {
    double sum = 0.0;
    for (double w : row) sum += w;
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(Helpers, NodeCountingIgnoresNoise) {
  EXPECT_EQ(count_nodes({1.0, 0.5, -0.5, -1.0, 1e-9, -1e-9, -0.5}), 1);
  EXPECT_EQ(count_nodes({0.0, 0.0}), 0);
}

TEST(Helpers, WellRegionsCutAtMaxima) {
  const auto pot = build_potential(ShiftParameters::from_params({1.0, 1.0, 1.0}));
  const GridSpec g{3.5, 1001};
  const auto regions = well_regions(pot, g);
  ASSERT_EQ(regions.size(), 4u);
  EXPECT_NEAR(regions[0].lo, -3.5, 1e-12);
  EXPECT_NEAR(regions[0].hi, -2.0, 1e-12);
  EXPECT_NEAR(regions[1].hi, 0.0, 1e-12);
  EXPECT_NEAR(regions[2].hi, 2.0, 1e-12);
  EXPECT_NEAR(regions[3].hi, 3.5, 1e-12);
}

TEST(Helpers, GridRefinementHalvesStep) {
  const GridSpec g{2.0, 1001};
  const auto f = g.refined();
  EXPECT_EQ(f.points, 2003);
  EXPECT_DOUBLE_EQ(f.step(), g.step() / 2.0);
  EXPECT_TRUE(g.symmetric());
  EXPECT_NEAR(g.node(500), 0.0, 1e-15);
}

}  // namespace
}  // namespace arnold::spectral
