#include "arnold/potential.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

#include "arnold/diophantine.hpp"

namespace arnold {
namespace {

double binom(int n, int k) { return diophantine::binomial(n, k).convert_to<double>(); }

std::vector<std::int64_t> resolve_weights(int n, std::optional<std::vector<std::int64_t>> weights) {
  if (!weights) return diophantine::default_weights(n);
  if (static_cast<int>(weights->size()) != n - 1) {
    throw DomainError("expected " + std::to_string(n - 1) + " weights for N=" + std::to_string(n));
  }
  for (auto w : *weights) {
    if (w <= 0) throw DomainError("weights must be positive integers");
  }
  return *weights;
}

void check_count(std::size_t n) {
  if (n < 1 || n > static_cast<std::size_t>(diophantine::kMaxVariables)) {
    throw DomainError("barrier count N must lie in 1..10");
  }
}

// Elementary symmetric polynomials e_0..e_N of the shifts.
template <typename T>
std::vector<T> elementary(const std::vector<T>& roots) {
  std::vector<T> e(roots.size() + 1, T(0));
  e[0] = T(1);
  for (std::size_t j = 0; j < roots.size(); ++j) {
    for (std::size_t m = j + 1; m >= 1; --m) e[m] += e[m - 1] * roots[j];
  }
  return e;
}

double horner(const std::vector<double>& desc, double t) {
  double acc = 0.0;
  for (double c : desc) acc = acc * t + c;
  return acc;
}

struct ShellGroup {
  double shift = 0.0;
  int first = 0;  // index of the first shift in the group
  int multiplicity = 0;
};

std::vector<ShellGroup> group_shells(const std::vector<double>& shifts, double tol) {
  std::vector<ShellGroup> groups;
  for (int j = 0; j < static_cast<int>(shifts.size()); ++j) {
    if (!groups.empty() && std::abs(shifts[j] - groups.back().shift) <= tol) {
      ++groups.back().multiplicity;
    } else {
      groups.push_back({shifts[j], j, 1});
    }
  }
  return groups;
}

ExtremumKind kind_from_signs(int left, int right) {
  if (left < 0 && right > 0) return ExtremumKind::minimum;
  if (left > 0 && right < 0) return ExtremumKind::maximum;
  return ExtremumKind::inflection;
}

// V'(x) = 2(N+1) x prod (x^2 - s_j) is positive beyond the outermost shell;
// walking inward, a shell of multiplicity m flips the sign iff m is odd.
std::vector<ExtremumRecord> records_from_shifts(const std::vector<double>& shifts,
                                                const ArnoldPotential& pot, double tol) {
  auto groups = group_shells(shifts, tol);
  int origin_multiplicity = 1;
  bool origin_degenerate = false;
  if (!groups.empty() && groups.front().shift <= tol) {
    origin_multiplicity += 2 * groups.front().multiplicity;
    origin_degenerate = true;
    groups.erase(groups.begin());
  }

  std::vector<ExtremumRecord> positive;
  int right = 1;
  for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
    const int left = (it->multiplicity % 2 == 1) ? -right : right;
    const double x = std::sqrt(it->shift);
    positive.push_back({x, pot.evaluate(x), kind_from_signs(left, right), it->first + 1,
                        it->multiplicity > 1});
    right = left;
  }
  const int left_of_origin = (origin_multiplicity % 2 == 1) ? -right : right;
  ExtremumRecord origin{0.0, 0.0, kind_from_signs(left_of_origin, right), 0, origin_degenerate};

  std::vector<ExtremumRecord> out;
  for (const auto& r : positive) {
    out.push_back({-r.position, r.value, r.kind, r.ring_index, r.degenerate});
  }
  out.push_back(origin);
  for (auto it = positive.rbegin(); it != positive.rend(); ++it) out.push_back(*it);
  return out;
}

}  // namespace

// ShiftParameters

ShiftParameters ShiftParameters::from_params(std::vector<double> params,
                                             std::optional<std::vector<std::int64_t>> weights) {
  check_count(params.size());
  for (double p : params) {
    if (!std::isfinite(p) || p < 0.0) throw DomainError("shift parameters must be finite and >= 0");
  }
  ShiftParameters out;
  out.weights_ = resolve_weights(static_cast<int>(params.size()), std::move(weights));
  out.params_ = std::move(params);
  return out;
}

ShiftParameters ShiftParameters::from_squares(std::vector<Rational> squares,
                                              std::optional<std::vector<std::int64_t>> weights) {
  check_count(squares.size());
  ShiftParameters out;
  for (const auto& s : squares) {
    if (s < 0) throw DomainError("squared shift parameters must be >= 0");
    out.params_.push_back(std::sqrt(to_double(s)));
  }
  out.weights_ = resolve_weights(static_cast<int>(squares.size()), std::move(weights));
  out.exact_squares_ = std::move(squares);
  return out;
}

ShiftParameters ShiftParameters::from_shifts(std::span<const double> shifts,
                                             std::optional<std::vector<std::int64_t>> weights) {
  check_count(shifts.size());
  const int n = static_cast<int>(shifts.size());
  const auto w = resolve_weights(n, std::move(weights));
  const double scale = std::max(1.0, std::abs(shifts.back()));
  std::vector<double> params(n);
  if (shifts[0] < -1e-12 * scale) throw DomainError("shifts must be >= 0");
  params[0] = std::sqrt(std::max(0.0, shifts[0]));
  for (int j = 1; j < n; ++j) {
    const double step = shifts[j] - shifts[j - 1];
    if (step < -1e-12 * scale) throw DomainError("shifts must be nondecreasing");
    params[j] = std::sqrt(std::max(0.0, step) / static_cast<double>(w[j - 1]));
  }
  return from_params(std::move(params), w);
}

std::vector<double> ShiftParameters::squares() const {
  std::vector<double> out;
  if (exact_squares_) {
    for (const auto& s : *exact_squares_) out.push_back(to_double(s));
  } else {
    for (double p : params_) out.push_back(p * p);
  }
  return out;
}

std::vector<double> ShiftParameters::shifts() const {
  if (exact_squares_) {
    std::vector<double> out;
    for (const auto& s : *exact_shifts()) out.push_back(to_double(s));
    return out;
  }
  const auto u = squares();
  std::vector<double> s(u.size());
  s[0] = u[0];
  for (std::size_t j = 1; j < u.size(); ++j) {
    s[j] = s[j - 1] + static_cast<double>(weights_[j - 1]) * u[j];
  }
  return s;
}

std::optional<std::vector<Rational>> ShiftParameters::exact_shifts() const {
  if (!exact_squares_) return std::nullopt;
  const auto& u = *exact_squares_;
  std::vector<Rational> s(u.size());
  s[0] = u[0];
  for (std::size_t j = 1; j < u.size(); ++j) s[j] = s[j - 1] + Rational(weights_[j - 1]) * u[j];
  return s;
}

bool ShiftParameters::strictly_increasing() const {
  return std::all_of(params_.begin(), params_.end(), [](double p) { return p > 0.0; });
}

// ArnoldPotential

ArnoldPotential::ArnoldPotential(std::vector<double> couplings, double lambda_sq)
    : couplings_(std::move(couplings)), lambda_sq_(lambda_sq) {
  prepare();
}

ArnoldPotential::ArnoldPotential(std::vector<Rational> couplings, double lambda_sq)
    : lambda_sq_(lambda_sq) {
  for (const auto& c : couplings) couplings_.push_back(to_double(c));
  exact_ = std::move(couplings);
  prepare();
}

void ArnoldPotential::prepare() {
  check_count(couplings_.size());
  if (!(lambda_sq_ > 0.0) || !std::isfinite(lambda_sq_)) {
    throw DomainError("lambda_sq must be positive and finite");
  }
  for (double c : couplings_) {
    if (!std::isfinite(c)) throw DomainError("couplings must be finite");
  }
  const int n = this->n();
  p_.assign(n + 1, 0.0);
  shell_.assign(n + 1, 0.0);
  for (int m = 0; m <= n; ++m) {
    const double c = (m == 0) ? 1.0 : couplings_[m - 1];
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    p_[m] = sign * binom(n + 1, m) * c;
    shell_[m] = sign * binom(n, m) * c;
  }
}

ArnoldPotential ArnoldPotential::with_lambda_sq(double lambda_sq) const {
  ArnoldPotential out = *this;
  out.lambda_sq_ = lambda_sq;
  out.prepare();
  return out;
}

ArnoldPotential ArnoldPotential::from_arnold_coefficients(std::span<const Rational> raw,
                                                          double lambda_sq) {
  if (raw.empty() || raw.size() % 2 != 0) {
    throw DomainError("raw Arnold couplings come in even count 2N (c_1..c_2N)");
  }
  const int n = static_cast<int>(raw.size() / 2);
  std::vector<Rational> couplings;
  for (int i = 1; i <= 2 * n; ++i) {
    const Rational& c = raw[i - 1];
    if (i % 2 == 0) {
      if (c != 0) throw DomainError("raw coupling c_" + std::to_string(i) + " breaks x -> -x symmetry");
      continue;
    }
    const int m = (i + 1) / 2;
    const Rational sign = (m % 2 == 0) ? 1 : -1;
    couplings.push_back(sign * c / Rational(diophantine::binomial(n + 1, m)));
  }
  return ArnoldPotential(std::move(couplings), lambda_sq);
}

std::vector<double> ArnoldPotential::coefficients() const {
  const int n = this->n();
  std::vector<double> out(2 * n + 3, 0.0);
  for (int m = 0; m <= n; ++m) out[2 * (n + 1 - m)] = p_[m];
  return out;
}

std::vector<Rational> ArnoldPotential::exact_coefficients() const {
  const int n = this->n();
  std::vector<Rational> out(2 * n + 3, Rational(0));
  for (int m = 0; m <= n; ++m) {
    Rational c = 1;
    if (m > 0) c = exact_ ? (*exact_)[m - 1] : exact_rational(couplings_[m - 1]);
    const Rational sign = (m % 2 == 0) ? 1 : -1;
    out[2 * (n + 1 - m)] = sign * Rational(diophantine::binomial(n + 1, m)) * c;
  }
  return out;
}

std::vector<Rational> ArnoldPotential::arnold_coefficients() const {
  const auto coeffs = exact_coefficients();
  const int n = this->n();
  std::vector<Rational> raw(2 * n, Rational(0));
  for (int i = 1; i <= 2 * n; ++i) raw[i - 1] = coeffs[2 * n + 1 - i];
  return raw;
}

std::vector<double> ArnoldPotential::shell_polynomial() const { return shell_; }

double ArnoldPotential::evaluate(double x) const {
  const double xi = x * x;
  return xi * horner(p_, xi);
}

double ArnoldPotential::derivative(double x) const {
  return 2.0 * (n() + 1) * x * horner(shell_, x * x);
}

// Construction and inversion

ArnoldPotential build_potential(const ShiftParameters& shift, BuildOptions options) {
  const int n = shift.n();
  if (options.require_integral_formulas) {
    diophantine::coupling_formulas(n, shift.weights());  // throws with witness
  }
  if (auto exact = shift.exact_shifts()) {
    const auto e = elementary(*exact);
    std::vector<Rational> couplings;
    for (int m = 1; m <= n; ++m) couplings.push_back(e[m] / Rational(diophantine::binomial(n, m)));
    return ArnoldPotential(std::move(couplings), options.lambda_sq);
  }
  // Couplings of the binary input values, rounded once.
  std::vector<Rational> shifts(n);
  for (int j = 0; j < n; ++j) {
    const Rational p = exact_rational(shift.params()[j]);
    shifts[j] = j == 0 ? p * p : shifts[j - 1] + Rational(shift.weights()[j - 1]) * p * p;
  }
  const auto e = elementary(shifts);
  std::vector<double> couplings;
  for (int m = 1; m <= n; ++m) couplings.push_back(to_double(e[m] / Rational(diophantine::binomial(n, m))));
  return ArnoldPotential(std::move(couplings), options.lambda_sq);
}

std::vector<double> stationary_shells(const ArnoldPotential& pot) {
  const int n = pot.n();
  const auto c = pot.shell_polynomial();  // monic, descending
  std::vector<double> roots;
  if (n == 1) {
    roots.push_back(-c[1]);
  } else {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[n - i];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw NumericalError("companion eigenvalues did not converge");
    const auto values = solver.eigenvalues();
    double scale = 1.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(values[i]));
    for (int i = 0; i < n; ++i) {
      if (std::abs(values[i].imag()) > 1e-6 * scale) {
        throw DomainError("not an N-barrier potential: complex stationary shell");
      }
      roots.push_back(values[i].real());
    }
  }

  std::vector<double> dc(n);
  for (int i = 0; i < n; ++i) dc[i] = c[i] * (n - i);
  for (double& r : roots) {
    for (int iter = 0; iter < 4; ++iter) {
      const double f = horner(c, r);
      const double df = horner(dc, r);
      if (f == 0.0 || df == 0.0) break;
      const double next = r - f / df;
      if (!(std::abs(horner(c, next)) < std::abs(f))) break;
      r = next;
    }
  }
  std::sort(roots.begin(), roots.end());
  const double scale = std::max(1.0, std::abs(roots.back()));
  if (roots.front() < -1e-12 * scale) {
    throw DomainError("not an N-barrier potential: negative stationary shell");
  }
  for (double& r : roots) r = std::max(0.0, r);
  return roots;
}

ShiftParameters couplings_to_shifts(const ArnoldPotential& pot,
                                    std::optional<std::vector<std::int64_t>> weights) {
  const auto roots = stationary_shells(pot);
  return ShiftParameters::from_shifts(roots, std::move(weights));
}

// Extrema

std::string to_string(ExtremumKind kind) {
  switch (kind) {
    case ExtremumKind::minimum: return "minimum";
    case ExtremumKind::maximum: return "maximum";
    case ExtremumKind::inflection: return "inflection";
  }
  return "unknown";
}

std::vector<ExtremumRecord> extrema(const ShiftParameters& shift) {
  const auto pot = build_potential(shift);
  if (auto exact = shift.exact_shifts()) {
    // Exact grouping: only identical shells merge.
    std::vector<double> s;
    for (const auto& v : *exact) s.push_back(to_double(v));
    std::vector<double> grouped = s;
    for (std::size_t j = 1; j < s.size(); ++j) {
      if ((*exact)[j] == (*exact)[j - 1]) grouped[j] = grouped[j - 1];
    }
    return records_from_shifts(grouped, pot, 0.0);
  }
  return records_from_shifts(shift.shifts(), pot, 0.0);
}

std::vector<ExtremumRecord> extrema(const ArnoldPotential& pot) {
  const auto roots = stationary_shells(pot);
  const double tol = 1e-9 * std::max(1.0, roots.back());
  return records_from_shifts(roots, pot, tol);
}

std::vector<Landmark> closed_form_landmarks(const ShiftParameters& shift) {
  const int n = shift.n();
  if (n < 1 || n > 3) throw DomainError("closed-form landmarks exist for N = 1, 2, 3 only");
  if (shift.weights() != *diophantine::published_weights(n)) {
    throw DomainError("closed-form landmarks assume the default weights");
  }
  const auto u = shift.squares();
  const double a2 = u[0];
  const double a4 = a2 * a2;
  std::vector<Landmark> out;
  if (n == 1) {
    out.push_back({"central maximum", 0.0, 0.0});
    out.push_back({"minimum", std::sqrt(a2), -a4});
  } else if (n == 2) {
    const double b2 = u[1];
    const double r2 = a2 + 2.0 * b2;
    out.push_back({"central minimum", 0.0, 0.0});
    out.push_back({"inner maximum", std::sqrt(a2), a4 * (a2 + 3.0 * b2)});
    out.push_back({"outer minimum", std::sqrt(r2), (a2 - b2) * r2 * r2});
  } else {
    const double b2 = u[1];
    const double g2 = u[2];
    const double t2 = a2 + 3.0 * b2;
    const double r2 = t2 + 3.0 * g2;
    out.push_back({"central maximum", 0.0, 0.0});
    out.push_back({"inner minimum", std::sqrt(a2),
                   -(a4 + 8.0 * a2 * b2 + 4.0 * a2 * g2 + 18.0 * b2 * b2 + 18.0 * b2 * g2) * a4});
    out.push_back({"intermediate maximum", std::sqrt(t2),
                   (3.0 * b2 * b2 + 6.0 * b2 * g2 - a2 * (a2 + 2.0 * b2 + 4.0 * g2)) * t2 * t2});
    out.push_back({"outer minimum", std::sqrt(r2),
                   -(a4 + 2.0 * a2 * b2 + 3.0 * g2 * g2 - 3.0 * b2 * b2 - 2.0 * a2 * g2) * r2 * r2});
  }
  return out;
}

std::vector<double> taylor_at(const ArnoldPotential& pot, double x0) {
  return taylor_shift(pot.coefficients(), x0);
}

std::vector<Rational> taylor_at(const ArnoldPotential& pot, const Rational& x0) {
  return taylor_shift(pot.exact_coefficients(), x0);
}

}  // namespace arnold
