#include "arnold/diophantine.hpp"

#include <cmath>
#include <sstream>

namespace arnold::diophantine {
namespace {

using XiPoly = std::vector<MultiPoly>;  // index = power of xi

void add_term(MultiPoly& poly, const Monomial& mono, const BigInt& coef) {
  if (coef == 0) return;
  auto [it, inserted] = poly.try_emplace(mono, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) poly.erase(it);
  }
}

// p * (xi - form)
XiPoly multiply_linear(const XiPoly& p, const LinearForm& form) {
  XiPoly out(p.size() + 1);
  for (std::size_t k = 0; k < p.size(); ++k) {
    for (const auto& [mono, coef] : p[k]) {
      add_term(out[k + 1], mono, coef);
      for (std::size_t v = 0; v < form.size(); ++v) {
        if (form[v] == 0) continue;
        Monomial next = mono;
        ++next[v];
        add_term(out[k], next, -coef * form[v]);
      }
    }
  }
  return out;
}

XiPoly unit() {
  XiPoly p(1);
  p[0].emplace(Monomial{}, BigInt(1));
  return p;
}

BigInt content(const MultiPoly& poly) {
  BigInt g = 0;
  for (const auto& [mono, coef] : poly) g = boost::multiprecision::gcd(g, coef);
  return g;
}

void check_n(int n) {
  if (n < 1 || n > kMaxVariables) {
    throw DomainError("barrier count N must lie in 1.." + std::to_string(kMaxVariables));
  }
}

void check_weights(int n, std::span<const std::int64_t> weights) {
  check_n(n);
  if (static_cast<int>(weights.size()) != n - 1) {
    throw DomainError("expected " + std::to_string(n - 1) + " weights for N=" + std::to_string(n) +
                      ", got " + std::to_string(weights.size()));
  }
  for (auto w : weights) {
    if (w <= 0) throw DomainError("weights must be positive integers");
  }
}

std::optional<Witness> first_violation(const FactoredExpansion& expansion) {
  for (int m = 1; m <= expansion.n; ++m) {
    const BigInt divisor = binomial(expansion.n, m);
    for (const auto& [mono, coef] : expansion.coefficients[m]) {
      if (coef % divisor != 0) return Witness{m, mono, coef, divisor};
    }
  }
  return std::nullopt;
}

// Per-depth data for the search: with u_{k+1..} set to zero every factor
// j >= k equals s_k = s_{k-1} + w u_k, so the truncated product is
//   A(xi) (xi - s_{k-1} - w u_k)^q,  q = N - k,
// and the part of order t in u_k is binom(q,t) (-w)^t A (xi - s_{k-1})^{q-t}.
// Only the content (gcd) of each xi-coefficient of A (xi - s_{k-1})^{q-t}
// matters for divisibility.
struct DepthTable {
  int q = 0;
  // contents[t][m]: content of [xi^{N-m}] of A (xi - s_{k-1})^{q-t}
  std::vector<std::vector<BigInt>> contents;
};

DepthTable build_depth_table(int n, int k, std::span<const LinearForm> forms) {
  DepthTable table;
  table.q = n - k;
  XiPoly a = unit();
  for (int j = 0; j < k; ++j) a = multiply_linear(a, forms[j]);
  table.contents.assign(table.q + 1, std::vector<BigInt>(n + 1, BigInt(0)));
  XiPoly p = a;  // t = q
  for (int t = table.q; t >= 1; --t) {
    // p has degree n - t in xi; its xi^power coefficient lands at order n - power
    const int degree = static_cast<int>(p.size()) - 1;
    for (int power = 0; power <= degree; ++power) {
      table.contents[t][n - power] = content(p[power]);
    }
    p = multiply_linear(p, forms[k - 1]);
  }
  return table;
}

bool depth_accepts(const DepthTable& table, int n, std::int64_t w) {
  BigInt w_pow = 1;
  for (int t = 1; t <= table.q; ++t) {
    w_pow *= w;
    const BigInt scale = binomial(table.q, t) * w_pow;
    for (int m = t; m <= n; ++m) {
      const BigInt& g = table.contents[t][m];
      if (g == 0) continue;
      if ((scale * g) % binomial(n, m) != 0) return false;
    }
  }
  return true;
}

LinearForm extend_form(const LinearForm& previous, int variable, std::int64_t weight) {
  LinearForm next = previous;
  next[variable] = weight;
  return next;
}

}  // namespace

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

FactoredExpansion expand_linear_forms(int num_variables, std::span<const LinearForm> forms) {
  check_n(num_variables);
  for (const auto& f : forms) {
    if (static_cast<int>(f.size()) != num_variables) {
      throw DomainError("linear form has wrong number of variables");
    }
  }
  XiPoly p = unit();
  for (const auto& f : forms) p = multiply_linear(p, f);
  FactoredExpansion out;
  out.n = static_cast<int>(forms.size());
  out.coefficients.resize(forms.size() + 1);
  for (int m = 0; m <= out.n; ++m) out.coefficients[m] = std::move(p[out.n - m]);
  return out;
}

std::vector<LinearForm> cumulative_forms(int n, std::span<const std::int64_t> weights) {
  check_weights(n, weights);
  std::vector<LinearForm> forms;
  LinearForm current(n, BigInt(0));
  current[0] = 1;
  forms.push_back(current);
  for (int j = 1; j < n; ++j) {
    current[j] = weights[j - 1];
    forms.push_back(current);
  }
  return forms;
}

FactoredExpansion expand_factored(int n, std::span<const std::int64_t> weights) {
  const auto forms = cumulative_forms(n, weights);
  return expand_linear_forms(n, forms);
}

WeightCandidate check_divisibility(WeightCandidate candidate) {
  const auto expansion = expand_factored(candidate.n, candidate.weights);
  candidate.witness = first_violation(expansion);
  candidate.valid = !candidate.witness.has_value();
  return candidate;
}

WeightCandidate check_forms(int n, std::span<const LinearForm> forms) {
  if (static_cast<int>(forms.size()) != n) throw DomainError("need exactly N linear forms");
  const auto expansion = expand_linear_forms(n, forms);
  WeightCandidate out;
  out.n = n;
  out.witness = first_violation(expansion);
  out.valid = !out.witness.has_value();
  return out;
}

WeightCandidate minimal_weights(int n, SearchOptions options) {
  check_n(n);
  if (options.bound < 1) throw DomainError("search bound must be positive");
  WeightCandidate result;
  result.n = n;
  if (n == 1) {
    result.valid = true;
    return result;
  }

  std::vector<LinearForm> forms;
  LinearForm first(n, BigInt(0));
  first[0] = 1;
  forms.push_back(first);
  std::vector<std::int64_t> weights;

  // Tables depend only on the prefix, so each depth builds one per visit.
  std::function<bool(int)> descend = [&](int k) -> bool {
    if (k == n) return true;
    const DepthTable table = build_depth_table(n, k, forms);
    for (std::int64_t w = 1; w <= options.bound; ++w) {
      if (!depth_accepts(table, n, w)) continue;
      weights.push_back(w);
      forms.push_back(extend_form(forms.back(), k, w));
      if (descend(k + 1)) return true;
      forms.pop_back();
      weights.pop_back();
    }
    return false;
  };

  if (!descend(1)) {
    throw DomainError("no valid tuple <= bound " + std::to_string(options.bound) +
                      " for N=" + std::to_string(n));
  }
  result.weights = weights;
  // The leaf condition of the search is the full criterion; confirm it with
  // the independent full expansion.
  return check_divisibility(std::move(result));
}

std::optional<std::vector<std::int64_t>> published_weights(int n) {
  switch (n) {
    case 1: return std::vector<std::int64_t>{};
    case 2: return std::vector<std::int64_t>{2};
    case 3: return std::vector<std::int64_t>{3, 3};
    case 4: return std::vector<std::int64_t>{4, 6, 12};
    case 5: return std::vector<std::int64_t>{5, 10, 10, 10};
    case 6: return std::vector<std::int64_t>{6, 15, 20, 30, 60};
    case 7: return std::vector<std::int64_t>{7, 21, 105, 35, 105, 105};
    // The last factor is printed with a bare theta; read as 280 theta^2.
    case 8: return std::vector<std::int64_t>{8, 28, 56, 70, 280, 140, 280};
    default: return std::nullopt;
  }
}

std::vector<std::int64_t> default_weights(int n) {
  check_n(n);
  if (auto w = published_weights(n)) return *w;
  return minimal_weights(n).weights;
}

std::vector<MultiPoly> coupling_formulas(int n, std::span<const std::int64_t> weights) {
  const auto expansion = expand_factored(n, weights);
  if (auto witness = first_violation(expansion)) {
    std::ostringstream msg;
    msg << "weights " << format_weights(weights) << " are not integral: coefficient "
        << witness->coefficient << " of " << format_monomial(witness->monomial) << " at xi^"
        << (n - witness->order) << " is not divisible by " << witness->divisor;
    throw DivisibilityError(msg.str(), *witness);
  }
  std::vector<MultiPoly> out(n);
  for (int m = 1; m <= n; ++m) {
    const BigInt divisor = binomial(n, m);
    const int sign = (m % 2 == 0) ? 1 : -1;
    for (const auto& [mono, coef] : expansion.coefficients[m]) {
      out[m - 1].emplace(mono, sign * coef / divisor);
    }
  }
  return out;
}

double evaluate(const MultiPoly& poly, std::span<const double> squares) {
  double total = 0.0;
  for (const auto& [mono, coef] : poly) {
    double term = coef.convert_to<double>();
    for (std::size_t v = 0; v < squares.size() && v < mono.size(); ++v) {
      term *= std::pow(squares[v], mono[v]);
    }
    total += term;
  }
  return total;
}

Rational evaluate(const MultiPoly& poly, std::span<const Rational> squares) {
  Rational total = 0;
  for (const auto& [mono, coef] : poly) {
    Rational term = Rational(coef);
    for (std::size_t v = 0; v < squares.size() && v < mono.size(); ++v) {
      for (int e = 0; e < mono[v]; ++e) term *= squares[v];
    }
    total += term;
  }
  return total;
}

std::string parameter_name(int index) {
  static const char* const names[kMaxVariables] = {"alpha", "beta", "gamma", "delta", "epsilon",
                                                   "zeta",  "eta",  "theta", "iota",  "kappa"};
  if (index < 0 || index >= kMaxVariables) throw DomainError("parameter index out of range");
  return names[index];
}

std::string format_monomial(const Monomial& monomial) {
  std::string out;
  for (int v = 0; v < kMaxVariables; ++v) {
    if (monomial[v] == 0) continue;
    if (!out.empty()) out += '*';
    out += parameter_name(v) + "^" + std::to_string(2 * monomial[v]);
  }
  return out.empty() ? "1" : out;
}

std::string format_polynomial(const MultiPoly& poly) {
  if (poly.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [mono, coef] : poly) {
    const bool negative = coef < 0;
    const BigInt magnitude = negative ? BigInt(-coef) : coef;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    const bool constant = mono == Monomial{};
    if (constant) {
      out << magnitude;
    } else {
      if (magnitude != 1) out << magnitude << '*';
      out << format_monomial(mono);
    }
    first = false;
  }
  return out.str();
}

std::string format_weights(std::span<const std::int64_t> weights) {
  std::string out = "(";
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(weights[i]);
  }
  return out + ")";
}

}  // namespace arnold::diophantine
