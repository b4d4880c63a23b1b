#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "arnold/diophantine.hpp"
#include "arnold/potential.hpp"
#include "support.hpp"

namespace arnold {
namespace {

using testing::Gen;
using testing::rel_diff;

// V'(x) = 2(N+1) x prod_j (x^2 - s_j)
double derivative_oracle(const std::vector<double>& shifts, double x) {
  double p = 2.0 * static_cast<double>(shifts.size() + 1) * x;
  for (double s : shifts) p *= x * x - s;
  return p;
}

// composite Simpson of the oracle derivative from 0
double value_oracle(const std::vector<double>& shifts, double x) {
  const int m = 4000;
  const double h = x / m;
  double sum = derivative_oracle(shifts, 0.0) + derivative_oracle(shifts, x);
  for (int i = 1; i < m; ++i) sum += (i % 2 ? 4.0 : 2.0) * derivative_oracle(shifts, i * h);
  return sum * h / 3.0;
}

TEST(BuildPotential, ThreeBarrierUnitParameters) {
  const auto shift = ShiftParameters::from_squares({1, 1, 1});
  const auto pot = build_potential(shift);
  ASSERT_TRUE(pot.exact_couplings().has_value());
  // shifts 1, 4, 7: e_1/3, e_2/3, e_3
  EXPECT_EQ(*pot.exact_couplings(), (std::vector<Rational>{4, 13, 28}));
}

TEST(BuildPotential, FiveWellExample) {
  const auto shift = ShiftParameters::from_squares({1, Rational(2, 3), Rational(5, 6), Rational(1, 3)},
                                                   std::vector<std::int64_t>{4, 6, 12});
  const auto c = build_potential(shift).exact_coefficients();
  ASSERT_EQ(c.size(), 11u);
  const std::vector<Rational> expected = {0, 0, Rational(54340, 27), 0, Rational(-39860, 27), 0, 355, 0,
                                          Rational(-65, 2), 0, 1};
  EXPECT_EQ(c, expected);
}

TEST(BuildPotential, RequireIntegralRejectsBadWeights) {
  const auto shift = ShiftParameters::from_params({1.0, 1.0, 1.0}, std::vector<std::int64_t>{1, 3});
  EXPECT_THROW(build_potential(shift, {.lambda_sq = 1.0, .require_integral_formulas = true}),
               diophantine::DivisibilityError);
  EXPECT_NO_THROW(build_potential(shift));
}

TEST(BuildPotential, ValueAndDerivativeMatchShiftProduct) {
  Gen gen(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = static_cast<int>(gen.integer(1, 5));
    std::vector<double> params(n);
    for (auto& p : params) p = gen.uniform(0.3, 1.4);
    const auto shift = ShiftParameters::from_params(params);
    const auto pot = build_potential(shift);
    const auto s = shift.shifts();
    const double x = gen.uniform(-1.2, 1.2) * std::sqrt(s.back());
    EXPECT_LT(rel_diff(pot.derivative(x), derivative_oracle(s, x)), 1e-10);
    EXPECT_LT(rel_diff(pot.evaluate(x), value_oracle(s, x)), 1e-8);
    for (double sj : s) {
      const double xs = std::sqrt(sj);
      double scale = 2.0 * (n + 1) * xs;
      for (double sk : s) scale *= sj + sk;
      EXPECT_LT(std::abs(pot.derivative(xs)) / scale, 1e-13);
    }
  }
}

TEST(Shells, RoundTripThroughCouplings) {
  Gen gen(17);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = static_cast<int>(gen.integer(1, 5));
    std::vector<double> params(n);
    for (auto& p : params) p = gen.uniform(0.4, 1.6);
    const auto pot = build_potential(ShiftParameters::from_params(params));
    const auto back = couplings_to_shifts(pot);
    ASSERT_EQ(back.n(), n);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(back.params()[i], params[i], 1e-8) << n;
  }
}

TEST(Shells, FigureOneShiftsFromQuadratic) {
  const std::vector<Rational> raw = {Rational(-61, 25), 0, Rational(36, 25), 0};
  const auto pot = ArnoldPotential::from_arnold_coefficients(raw, 1.0 / 36.0);
  // V' = 6x (xi^2 - 122/75 xi + 12/25)
  const double b = 122.0 / 75.0, c = 12.0 / 25.0;
  const double d = std::sqrt(b * b - 4.0 * c);
  const double s0 = (b - d) / 2.0, s1 = (b + d) / 2.0;
  const auto shift = couplings_to_shifts(pot);
  EXPECT_NEAR(shift.squares()[0], s0, 1e-12);
  EXPECT_NEAR(shift.squares()[1], (s1 - s0) / 2.0, 1e-12);
  EXPECT_NEAR(shift.squares()[0], 0.387292, 1e-6);
  EXPECT_NEAR(shift.squares()[1], 0.426041, 1e-6);
  EXPECT_EQ(pot.arnold_coefficients(), raw);
  EXPECT_DOUBLE_EQ(pot.lambda_sq(), 1.0 / 36.0);
}

TEST(Shells, RejectsNonMultiWell) {
  EXPECT_THROW(stationary_shells(ArnoldPotential(std::vector<double>{-1.0})), DomainError);
  const std::vector<Rational> odd = {Rational(-2), Rational(1)};
  EXPECT_THROW(ArnoldPotential::from_arnold_coefficients(odd), DomainError);
}

TEST(Extrema, ThreeBarrierUnitParameters) {
  const auto records = extrema(ShiftParameters::from_params({1.0, 1.0, 1.0}));
  ASSERT_EQ(records.size(), 7u);
  const double r7 = std::sqrt(7.0);
  const std::vector<double> pos = {-r7, -2, -1, 0, 1, 2, r7};
  const std::vector<double> val = {-49, 32, -49, 0, -49, 32, -49};
  for (std::size_t i = 0; i < 7; ++i) {
    EXPECT_NEAR(records[i].position, pos[i], 1e-12);
    EXPECT_NEAR(records[i].value, val[i], 1e-10);
    EXPECT_EQ(records[i].kind, i % 2 ? ExtremumKind::maximum : ExtremumKind::minimum);
  }
  EXPECT_EQ(records[3].ring_index, 0);
  EXPECT_EQ(records[6].ring_index, 3);
}

TEST(Extrema, CoincidingShellsMerge) {
  // gamma = 0: outer two shells coincide into an inflection
  const auto records = extrema(ShiftParameters::from_params({1.0, 1.0, 0.0}));
  int degenerate = 0;
  for (const auto& r : records) degenerate += r.degenerate ? 1 : 0;
  EXPECT_EQ(degenerate, 2);
  EXPECT_EQ(records.size(), 5u);
  EXPECT_EQ(records.front().kind, ExtremumKind::inflection);
}

TEST(Extrema, PotentialAndShiftAgree) {
  const auto shift = ShiftParameters::from_params({0.8, 1.1, 0.7, 0.9});
  const auto a = extrema(shift);
  const auto b = extrema(build_potential(shift));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a[i].position, b[i].position, 1e-9);
    EXPECT_EQ(a[i].kind, b[i].kind);
  }
}

TEST(Landmarks, MatchDirectEvaluation) {
  Gen gen(5);
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> params(n);
      for (auto& p : params) p = gen.uniform(0.5, 1.5);
      const auto shift = ShiftParameters::from_params(params);
      const auto pot = build_potential(shift);
      const auto marks = closed_form_landmarks(shift);
      EXPECT_EQ(marks.size(), static_cast<std::size_t>(n + 1));
      for (const auto& m : marks) {
        EXPECT_LT(std::abs(m.value - pot.evaluate(m.position)), 1e-10 * (1.0 + std::abs(m.value))) << m.name;
      }
    }
  }
}

TEST(Landmarks, EqualDepthOnSymmetricRay) {
  Gen gen(7);
  for (int trial = 0; trial < 100; ++trial) {
    const double alpha = gen.uniform(0.2, 3.0), sigma = gen.uniform(0.1, 3.0);
    const auto shift = ShiftParameters::from_params({alpha, sigma * alpha, sigma * alpha});
    const auto pot = build_potential(shift);
    const double r = std::sqrt(shift.shifts()[2]);
    EXPECT_LT(rel_diff(pot.evaluate(alpha), pot.evaluate(r)), 1e-12);
    EXPECT_LT(rel_diff(pot.evaluate(-alpha), pot.evaluate(-r)), 1e-12);
  }
}

TEST(Taylor, ExactShiftMatchesDirectExpansion) {
  const auto pot = build_potential(ShiftParameters::from_squares({1, 1, 1}));
  const auto c = pot.exact_coefficients();
  const Rational x0(3, 2);
  const auto t = taylor_at(pot, x0);
  ASSERT_EQ(t.size(), c.size());
  // t_j = sum_i binom(i, j) c_i x0^{i-j}
  for (std::size_t j = 0; j < c.size(); ++j) {
    Rational sum = 0;
    for (std::size_t i = j; i < c.size(); ++i) {
      Rational p = Rational(diophantine::binomial(static_cast<int>(i), static_cast<int>(j))) * c[i];
      for (std::size_t k = j; k < i; ++k) p *= x0;
      sum += p;
    }
    EXPECT_EQ(t[j], sum) << j;
  }
  const auto td = taylor_at(pot, 1.5);
  EXPECT_NEAR(td[0], pot.evaluate(1.5), 1e-9);
  EXPECT_NEAR(td[1], pot.derivative(1.5), 1e-9);
}

TEST(ShiftParameters, Validation) {
  EXPECT_THROW(ShiftParameters::from_params({}), DomainError);
  EXPECT_THROW(ShiftParameters::from_params({1.0, 1.0}, std::vector<std::int64_t>{0}), DomainError);
  EXPECT_THROW(ShiftParameters::from_params({1.0, 1.0, 1.0}, std::vector<std::int64_t>{3}), DomainError);
  const std::vector<double> bad = {2.0, 1.0};
  EXPECT_THROW(ShiftParameters::from_shifts(bad), DomainError);
  EXPECT_FALSE(ShiftParameters::from_params({1.0, 0.0}).strictly_increasing());
  EXPECT_EQ(ShiftParameters::from_params({1.0, 1.0}).weights(), std::vector<std::int64_t>{2});
}

}  // namespace
}  // namespace arnold
