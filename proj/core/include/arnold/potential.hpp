#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arnold/error.hpp"
#include "arnold/rational.hpp"

namespace arnold {

/// Well geometry of a symmetric Arnold potential with N barriers.
///
/// The stationary shells sit at x^2 = s_j with cumulative shifts
///   s_0 = alpha^2,  s_j = s_{j-1} + w_j * params[j]^2.
/// When the squares are known exactly (rational input) the exact values are
/// kept alongside and every derived quantity can be formed without rounding.
class ShiftParameters {
 public:
  /// Weights default to the integer-normalizing tuple for N.
  static ShiftParameters from_params(std::vector<double> params,
                                     std::optional<std::vector<std::int64_t>> weights = {});
  static ShiftParameters from_squares(std::vector<Rational> squares,
                                      std::optional<std::vector<std::int64_t>> weights = {});
  /// Inverts the cumulative rule; shifts must be nondecreasing and >= 0.
  static ShiftParameters from_shifts(std::span<const double> shifts,
                                     std::optional<std::vector<std::int64_t>> weights = {});

  int n() const noexcept { return static_cast<int>(params_.size()); }
  const std::vector<double>& params() const noexcept { return params_; }
  const std::vector<std::int64_t>& weights() const noexcept { return weights_; }
  const std::optional<std::vector<Rational>>& exact_squares() const noexcept { return exact_squares_; }

  std::vector<double> squares() const;
  std::vector<double> shifts() const;
  std::optional<std::vector<Rational>> exact_shifts() const;

  /// True when every parameter beyond alpha is nonzero and alpha > 0.
  bool strictly_increasing() const;

 private:
  ShiftParameters() = default;
  std::vector<double> params_;
  std::vector<std::int64_t> weights_;
  std::optional<std::vector<Rational>> exact_squares_;
};

/// V(x) = sum_{m=0}^{N} (-1)^m binom(N+1, m) c_m^2 x^{2(N+1-m)},  c_0^2 = 1,
/// for the bound-state problem  -lambda_sq psi'' + V psi = E psi.
class ArnoldPotential {
 public:
  explicit ArnoldPotential(std::vector<double> couplings, double lambda_sq = 1.0);
  explicit ArnoldPotential(std::vector<Rational> couplings, double lambda_sq = 1.0);

  /// Raw Arnold form x^{2N+2} + c_1 x^{2N} + c_2 x^{2N-1} + ... + c_{2N} x.
  /// Even-index couplings must vanish (symmetric family only).
  static ArnoldPotential from_arnold_coefficients(std::span<const Rational> raw,
                                                  double lambda_sq = 1.0);

  int n() const noexcept { return static_cast<int>(couplings_.size()); }
  const std::vector<double>& couplings() const noexcept { return couplings_; }
  const std::optional<std::vector<Rational>>& exact_couplings() const noexcept { return exact_; }
  double lambda_sq() const noexcept { return lambda_sq_; }
  ArnoldPotential with_lambda_sq(double lambda_sq) const;

  /// Ascending power coefficients of V, length 2N+3.
  std::vector<double> coefficients() const;
  /// Exact ascending coefficients; the double couplings are taken at their
  /// exact binary value when no rational couplings were supplied.
  std::vector<Rational> exact_coefficients() const;

  /// Raw Arnold couplings c_1..c_{2N} (inverse of from_arnold_coefficients).
  std::vector<Rational> arnold_coefficients() const;

  /// Descending coefficients of C(xi) = sum (-1)^m binom(N,m) c_m^2 xi^{N-m}.
  std::vector<double> shell_polynomial() const;

  double operator()(double x) const { return evaluate(x); }
  double evaluate(double x) const;
  double derivative(double x) const;

 private:
  void prepare();
  std::vector<double> couplings_;
  std::optional<std::vector<Rational>> exact_;
  double lambda_sq_ = 1.0;
  std::vector<double> p_;      // V = xi * P(xi), descending in xi
  std::vector<double> shell_;  // C(xi), descending
};

struct BuildOptions {
  double lambda_sq = 1.0;
  /// Reject weight tuples whose coupling formulas are not integer
  /// polynomials (DivisibilityError carries the offending monomial).
  bool require_integral_formulas = false;
};

ArnoldPotential build_potential(const ShiftParameters& shift, BuildOptions options = {});

/// Sorted real roots of C(xi), found as companion-matrix eigenvalues and
/// polished by Newton steps. Throws DomainError("not an N-barrier potential")
/// for complex or negative roots.
std::vector<double> stationary_shells(const ArnoldPotential& pot);

ShiftParameters couplings_to_shifts(const ArnoldPotential& pot,
                                    std::optional<std::vector<std::int64_t>> weights = {});

enum class ExtremumKind { minimum, maximum, inflection };

std::string to_string(ExtremumKind kind);

struct ExtremumRecord {
  double position = 0.0;
  double value = 0.0;
  ExtremumKind kind = ExtremumKind::minimum;
  int ring_index = 0;  // 0 = origin, j = shell x^2 = s_{j-1}
  bool degenerate = false;
};

/// Stationary points sorted by position: the origin and +-sqrt(s_j).
/// Coinciding shells are merged into one flagged record per position.
std::vector<ExtremumRecord> extrema(const ShiftParameters& shift);
std::vector<ExtremumRecord> extrema(const ArnoldPotential& pot);

struct Landmark {
  std::string name;
  double position = 0.0;
  double value = 0.0;
};

/// Closed-form depths and heights for N = 1, 2, 3 (default weights only).
std::vector<Landmark> closed_form_landmarks(const ShiftParameters& shift);

/// b_j with sum_i a_i (x0 + y)^i = sum_j b_j y^j, by repeated synthetic division.
template <typename T>
std::vector<T> taylor_shift(std::vector<T> coefficients, const T& x0) {
  const std::size_t d = coefficients.size();
  for (std::size_t k = 0; k + 1 < d; ++k) {
    for (std::size_t i = d - 1; i-- > k;) coefficients[i] += x0 * coefficients[i + 1];
  }
  return coefficients;
}

std::vector<double> taylor_at(const ArnoldPotential& pot, double x0);
std::vector<Rational> taylor_at(const ArnoldPotential& pot, const Rational& x0);

}  // namespace arnold
