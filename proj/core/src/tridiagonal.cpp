#include "arnold/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "arnold/error.hpp"

namespace arnold::tridiagonal {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Factorization {
  std::vector<double> dl, d, du, du2;
  std::vector<char> swapped;
};

// LU of (T - shift I) with partial pivoting; zero pivots are nudged to
// `tiny` so the nearly singular solve still produces the growth we want.
Factorization factor(std::span<const double> diag, std::span<const double> off, double shift,
                     double tiny) {
  const std::size_t n = diag.size();
  Factorization f;
  f.d.resize(n);
  for (std::size_t i = 0; i < n; ++i) f.d[i] = diag[i] - shift;
  f.dl.assign(off.begin(), off.end());
  f.du.assign(off.begin(), off.end());
  f.du2.assign(n > 2 ? n - 2 : 0, 0.0);
  f.swapped.assign(n > 0 ? n - 1 : 0, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(f.d[i]) >= std::abs(f.dl[i])) {
      if (f.d[i] == 0.0) f.d[i] = tiny;
      const double fact = f.dl[i] / f.d[i];
      f.dl[i] = fact;
      f.d[i + 1] -= fact * f.du[i];
    } else {
      const double fact = f.d[i] / f.dl[i];
      f.d[i] = f.dl[i];
      f.dl[i] = fact;
      const double temp = f.du[i];
      f.du[i] = f.d[i + 1];
      f.d[i + 1] = temp - fact * f.d[i + 1];
      if (i + 2 < n) {
        f.du2[i] = f.du[i + 1];
        f.du[i + 1] = -fact * f.du[i + 1];
      }
      f.swapped[i] = 1;
    }
  }
  if (n > 0 && f.d[n - 1] == 0.0) f.d[n - 1] = tiny;
  return f;
}

void solve_in_place(const Factorization& f, std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (f.swapped[i]) std::swap(b[i], b[i + 1]);
    b[i + 1] -= f.dl[i] * b[i];
  }
  b[n - 1] /= f.d[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - f.du[n - 2] * b[n - 1]) / f.d[n - 2];
  if (n < 3) return;
  for (std::size_t i = n - 2; i-- > 0;) {
    b[i] = (b[i] - f.du[i] * b[i + 1] - f.du2[i] * b[i + 2]) / f.d[i];
  }
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void orthogonalize(std::vector<double>& v, const std::vector<std::vector<double>>& basis) {
  for (const auto& q : basis) {
    double dot = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * q[i];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * q[i];
  }
}

}  // namespace

int sturm_count(std::span<const double> diag, std::span<const double> off, double x) {
  int count = 0;
  double q = 1.0;
  const double guard = kEps * kEps;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double e2 = i == 0 ? 0.0 : off[i - 1] * off[i - 1];
    q = diag[i] - x - (i == 0 ? 0.0 : e2 / q);
    if (q == 0.0) q = -guard;
    if (q < 0.0) ++count;
  }
  return count;
}

std::pair<double, double> gershgorin(std::span<const double> diag, std::span<const double> off) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(off[i - 1]);
    if (i < off.size()) r += std::abs(off[i]);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  return {lo, hi};
}

double eigenvalue(std::span<const double> diag, std::span<const double> off, int k) {
  if (k < 0 || k >= static_cast<int>(diag.size())) throw DomainError("eigenvalue index out of range");
  auto [lo, hi] = gershgorin(diag, off);
  const double scale = std::max(std::abs(lo), std::abs(hi));
  for (int iter = 0; iter < 256; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 2.0 * kEps * std::max(std::abs(mid), 1e-3 * scale)) break;
    if (sturm_count(diag, off, mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Eigenpairs lowest_eigenpairs(std::span<const double> diag, std::span<const double> off, int count,
                             std::uint32_t seed) {
  const int n = static_cast<int>(diag.size());
  if (off.size() + 1 != diag.size()) throw DomainError("off-diagonal must have length M-1");
  if (count < 1 || count > n) throw DomainError("requested eigenpair count out of range");
  const auto [lo, hi] = gershgorin(diag, off);
  const double tiny = kEps * std::max(std::abs(lo), std::abs(hi));

  Eigenpairs out;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  for (int k = 0; k < count; ++k) {
    const double lambda = eigenvalue(diag, off, k);
    const Factorization f = factor(diag, off, lambda, tiny);
    std::vector<double> v(n);
    for (double& x : v) x = uniform(rng);
    orthogonalize(v, out.vectors);
    for (int iter = 0; iter < 4; ++iter) {
      const double nv = norm(v);
      if (!(nv > 0.0) || !std::isfinite(nv)) throw NumericalError("inverse iteration broke down");
      for (double& x : v) x /= nv;
      solve_in_place(f, v);
      orthogonalize(v, out.vectors);
    }
    const double nv = norm(v);
    if (!(nv > 0.0) || !std::isfinite(nv)) throw NumericalError("inverse iteration broke down");
    for (double& x : v) x /= nv;
    out.values.push_back(lambda);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

}  // namespace arnold::tridiagonal
