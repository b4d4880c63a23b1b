#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arnold/error.hpp"
#include "arnold/rational.hpp"

// Integer normalization of the shift parametrization.
//
// The stationary shells of the symmetric Arnold potential of degree 2N+2 are
// the roots of C(xi) = prod_j (xi - s_j) with cumulative shifts
//   s_0 = u_0,  s_j = s_{j-1} + w_j u_j,   u_j = (j-th parameter)^2.
// The couplings are c_m^2 = (-1)^m [xi^{N-m}] C / binom(N, m). A weight tuple
// (w_1..w_{N-1}) is valid when every one of those divisions is exact over the
// integer monomials in u_0..u_{N-1}.
namespace arnold::diophantine {

inline constexpr int kMaxVariables = 10;

/// Exponents of u_0..u_9; u_i stands for the square of the i-th parameter.
using Monomial = std::array<std::uint8_t, kMaxVariables>;

/// Sparse integer polynomial. std::greater puts alpha-heavy monomials first,
/// which is the canonical print order.
using MultiPoly = std::map<Monomial, BigInt, std::greater<>>;

/// One linear factor's shift: coefficients of u_0..u_{n-1}.
using LinearForm = std::vector<BigInt>;

struct FactoredExpansion {
  int n = 0;
  /// coefficients[m] is the coefficient of xi^{N-m}, signs included.
  std::vector<MultiPoly> coefficients;
};

/// Expands prod_j (xi - form_j) over `num_variables` formal variables.
FactoredExpansion expand_linear_forms(int num_variables, std::span<const LinearForm> forms);

/// The cumulative forms s_0..s_{N-1} generated by a weight tuple.
std::vector<LinearForm> cumulative_forms(int n, std::span<const std::int64_t> weights);

FactoredExpansion expand_factored(int n, std::span<const std::int64_t> weights);

struct Witness {
  int order = 0;  // m: coefficient of xi^{N-m}
  Monomial monomial{};
  BigInt coefficient;
  BigInt divisor;  // binom(N, m)
};

struct WeightCandidate {
  int n = 0;
  std::vector<std::int64_t> weights;
  bool valid = false;
  std::optional<Witness> witness;
};

/// Fills `valid` and, on failure, the first offending monomial in
/// (order, canonical monomial) order.
WeightCandidate check_divisibility(WeightCandidate candidate);

/// Divisibility of an arbitrary factored ansatz (non-cumulative shapes such
/// as (xi-a)(xi-a-P b)(xi-a-Q b-R c)).
WeightCandidate check_forms(int n, std::span<const LinearForm> forms);

struct SearchOptions {
  std::int64_t bound = 512;
};

/// Lexicographically smallest valid tuple with every weight <= bound.
/// Depth-first, ascending per position, with backtracking. Throws
/// DomainError("no valid tuple <= bound") when the space is exhausted.
WeightCandidate minimal_weights(int n, SearchOptions options = {});

/// Weight tuples printed in the literature for N = 1..8; nullopt otherwise.
std::optional<std::vector<std::int64_t>> published_weights(int n);

/// published_weights(n) when available, else minimal_weights(n).
std::vector<std::int64_t> default_weights(int n);

class DivisibilityError : public DomainError {
 public:
  DivisibilityError(std::string message, Witness witness)
      : DomainError(std::move(message)), witness_(std::move(witness)) {}
  const Witness& witness() const noexcept { return witness_; }

 private:
  Witness witness_;
};

/// c_1^2..c_N^2 as integer polynomials in the squared parameters.
/// Throws DivisibilityError when `weights` is not a valid tuple.
std::vector<MultiPoly> coupling_formulas(int n, std::span<const std::int64_t> weights);

/// Numerical value at the given squared parameters u_0..u_{n-1}.
double evaluate(const MultiPoly& poly, std::span<const double> squares);
Rational evaluate(const MultiPoly& poly, std::span<const Rational> squares);

/// Symbol for parameter i: alpha, beta, gamma, ... (kappa for i = 9).
std::string parameter_name(int index);

/// "alpha^2*beta^4" style; u_i^e prints as (name)^(2e).
std::string format_monomial(const Monomial& monomial);

/// Canonical text form, e.g. "alpha^2 + 4*beta^2 + 6*gamma^2".
std::string format_polynomial(const MultiPoly& poly);

std::string format_weights(std::span<const std::int64_t> weights);

BigInt binomial(int n, int k);

}  // namespace arnold::diophantine
