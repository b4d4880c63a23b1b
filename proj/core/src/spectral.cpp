#include "arnold/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "arnold/tridiagonal.hpp"

namespace arnold::spectral {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double rayleigh(const std::vector<double>& diag, double off, const std::vector<double>& v) {
  double num = 0.0, den = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    double tv = diag[i] * v[i];
    if (i > 0) tv += off * v[i - 1];
    if (i + 1 < n) tv += off * v[i + 1];
    num += v[i] * tv;
    den += v[i] * v[i];
  }
  return num / den;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

void normalize_l2(std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  for (double& x : v) x /= s;
}

// Splits the span of (a, b) into its even and odd members.
void project_pair(std::vector<double>& a, std::vector<double>& b) {
  const std::size_t n = a.size();
  std::vector<double> ea(n), eb(n), oa(n), ob(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n - 1 - i;
    ea[i] = 0.5 * (a[i] + a[j]);
    oa[i] = 0.5 * (a[i] - a[j]);
    eb[i] = 0.5 * (b[i] + b[j]);
    ob[i] = 0.5 * (b[i] - b[j]);
  }
  auto norm2 = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
  };
  a = norm2(ea) >= norm2(eb) ? ea : eb;
  b = norm2(oa) >= norm2(ob) ? oa : ob;
  normalize_l2(a);
  normalize_l2(b);
}

void fix_sign(std::vector<double>& psi) {
  const double threshold = 1e-3 * max_abs(psi);
  for (double x : psi) {
    if (std::abs(x) >= threshold) {
      if (x < 0.0) {
        for (double& y : psi) y = -y;
      }
      return;
    }
  }
}

std::vector<Region> scan_regions(const std::vector<double>& x, const std::vector<double>& v,
                                 const GridSpec& grid) {
  std::vector<Region> out;
  double lo = grid.offset - grid.half_width;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] > v[i - 1] && v[i] >= v[i + 1]) {
      out.push_back({lo, x[i]});
      lo = x[i];
    }
  }
  out.push_back({lo, grid.offset + grid.half_width});
  return out;
}

void validate_partition(const std::vector<Region>& regions, const GridSpec& grid) {
  if (regions.empty()) throw DomainError("regions must not be empty");
  const double tol = 1e-9 * std::max(1.0, grid.half_width);
  const double left = grid.offset - grid.half_width;
  const double right = grid.offset + grid.half_width;
  if (std::abs(regions.front().lo - left) > tol || std::abs(regions.back().hi - right) > tol) {
    throw DomainError("regions must cover the box [offset-L, offset+L]");
  }
  for (std::size_t r = 0; r < regions.size(); ++r) {
    if (!(regions[r].hi >= regions[r].lo)) throw DomainError("region with hi < lo");
    if (r > 0 && std::abs(regions[r].lo - regions[r - 1].hi) > tol) {
      throw DomainError("regions must be contiguous and non-overlapping");
    }
  }
}

// Integral of the piecewise-linear interpolant of rho over [lo, hi]; the
// density vanishes at the two box walls.
double integrate_density(const std::vector<double>& xs, const std::vector<double>& rho, double lo,
                         double hi) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double a = std::max(lo, xs[i]);
    const double b = std::min(hi, xs[i + 1]);
    if (b <= a) continue;
    const double width = xs[i + 1] - xs[i];
    const double slope = (rho[i + 1] - rho[i]) / width;
    const double ra = rho[i] + slope * (a - xs[i]);
    const double rb = rho[i] + slope * (b - xs[i]);
    total += 0.5 * (ra + rb) * (b - a);
  }
  return total;
}

}  // namespace

void GridSpec::validate() const {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw DomainError("half_width must be positive");
  if (points < 64) throw DomainError("grid needs at least 64 points");
  if (points > 4'000'001) throw DomainError("grid larger than 4000001 points");
  if (lambda_sq && (!(*lambda_sq > 0.0) || !std::isfinite(*lambda_sq))) {
    throw DomainError("lambda_sq must be positive");
  }
  if (!std::isfinite(offset)) throw DomainError("grid offset must be finite");
}

GridSpec GridSpec::refined() const {
  GridSpec out = *this;
  out.points = 2 * points + 1;
  return out;
}

std::string to_string(Parity parity) {
  switch (parity) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    case Parity::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

int count_nodes(const std::vector<double>& psi) {
  const double threshold = 1e-6 * max_abs(psi);
  int nodes = 0;
  int last = 0;
  for (double v : psi) {
    if (std::abs(v) < threshold) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++nodes;
    last = s;
  }
  return nodes;
}

std::vector<Parity> classify_parity(const SpectralResult& result, double tol) {
  std::vector<Parity> out;
  for (const auto& psi : result.wavefunctions) {
    if (!result.grid.symmetric()) {
      out.push_back(Parity::indeterminate);
      continue;
    }
    const double scale = max_abs(psi);
    double sym = 0.0, anti = 0.0;
    const std::size_t n = psi.size();
    for (std::size_t i = 0; i < n; ++i) {
      sym = std::max(sym, std::abs(psi[i] - psi[n - 1 - i]));
      anti = std::max(anti, std::abs(psi[i] + psi[n - 1 - i]));
    }
    if (sym <= tol * scale) {
      out.push_back(Parity::even);
    } else if (anti <= tol * scale) {
      out.push_back(Parity::odd);
    } else {
      out.push_back(Parity::indeterminate);
    }
  }
  return out;
}

std::vector<std::vector<double>> localization_weights(const SpectralResult& result,
                                                      const std::vector<Region>& regions) {
  validate_partition(regions, result.grid);
  std::vector<double> xs;
  xs.push_back(result.grid.offset - result.grid.half_width);
  xs.insert(xs.end(), result.x.begin(), result.x.end());
  xs.push_back(result.grid.offset + result.grid.half_width);
  std::vector<std::vector<double>> out;
  for (const auto& psi : result.wavefunctions) {
    std::vector<double> rho(xs.size(), 0.0);
    for (std::size_t i = 0; i < psi.size(); ++i) rho[i + 1] = psi[i] * psi[i];
    std::vector<double> row;
    for (const auto& r : regions) row.push_back(integrate_density(xs, rho, r.lo, r.hi));
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<Region> well_regions(const ArnoldPotential& pot, const GridSpec& grid) {
  std::vector<Region> out;
  double lo = grid.offset - grid.half_width;
  const double hi = grid.offset + grid.half_width;
  for (const auto& e : extrema(pot)) {
    if (e.kind != ExtremumKind::maximum) continue;
    if (e.position <= lo || e.position >= hi) continue;
    out.push_back({lo, e.position});
    lo = e.position;
  }
  out.push_back({lo, hi});
  return out;
}

std::vector<Splitting> doublet_splittings(const SpectralResult& result, double gap_factor) {
  std::vector<Splitting> out;
  const auto& e = result.energies;
  const int n = static_cast<int>(e.size());
  for (int i = 0; i + 1 < n; ++i) {
    const double gap = e[i + 1] - e[i];
    double spacing = std::numeric_limits<double>::infinity();
    if (i > 0) spacing = std::min(spacing, e[i] - e[i - 1]);
    if (i + 2 < n) spacing = std::min(spacing, e[i + 2] - e[i + 1]);
    if (!std::isfinite(spacing) || !(gap < gap_factor * spacing)) continue;
    const Parity pi = result.parities.size() > static_cast<std::size_t>(i) ? result.parities[i] : Parity::indeterminate;
    const Parity pj = result.parities.size() > static_cast<std::size_t>(i + 1) ? result.parities[i + 1]
                                                                               : Parity::indeterminate;
    if (pi != Parity::indeterminate && pi == pj) continue;
    const double split = (pi == Parity::odd && pj == Parity::even) ? e[i] - e[i + 1] : gap;
    out.push_back({i, i + 1, split});
    ++i;
  }
  return out;
}

SpectralResult solve(const std::function<double(double)>& potential, const GridSpec& grid,
                     int n_states, const SolveOptions& options) {
  grid.validate();
  if (n_states < 1 || n_states > grid.points) throw DomainError("n_states out of range");
  const double lambda_sq = grid.lambda_sq.value_or(1.0);
  const int m = grid.points;
  const double h = grid.step();
  const double kinetic = lambda_sq / (h * h);

  SpectralResult result;
  result.grid = grid;
  result.grid.lambda_sq = lambda_sq;
  result.lambda_sq = lambda_sq;
  result.x.resize(m);
  std::vector<double> v(m), diag(m);
  for (int i = 0; i < m; ++i) {
    result.x[i] = grid.node(i);
    v[i] = potential(result.x[i]);
    if (!std::isfinite(v[i])) throw NumericalError("potential is not finite on the grid");
    diag[i] = v[i] + 2.0 * kinetic;
  }
  const std::vector<double> off(m - 1, -kinetic);
  auto pairs = tridiagonal::lowest_eigenpairs(diag, off, n_states, options.seed);

  const double wall = std::min(potential(grid.offset - grid.half_width),
                               potential(grid.offset + grid.half_width));
  if (pairs.values.back() >= wall) {
    throw NumericalError("requested states reach V(+-L) = " + std::to_string(wall) +
                         "; enlarge the box or ask for fewer states");
  }

  if (grid.symmetric()) {
    double tnorm = 0.0;
    for (double d : diag) tnorm = std::max(tnorm, std::abs(d) + 2.0 * kinetic);
    const double close = std::max(1e-12, 64.0 * kEps * tnorm);
    SpectralResult probe;
    probe.grid = grid;
    for (int k = 0; k + 1 < n_states; ++k) {
      probe.wavefunctions = {pairs.vectors[k], pairs.vectors[k + 1]};
      const auto par = classify_parity(probe, options.parity_tol);
      const bool mixed = par[0] == Parity::indeterminate && par[1] == Parity::indeterminate;
      if (!(pairs.values[k + 1] - pairs.values[k] < close) && !mixed) continue;
      auto& a = pairs.vectors[k];
      auto& b = pairs.vectors[k + 1];
      project_pair(a, b);
      // a is even, b odd; below resolution the even member stays first.
      const double ra = rayleigh(diag, -kinetic, a);
      const double rb = rayleigh(diag, -kinetic, b);
      if (ra - rb > close) std::swap(a, b);
      ++k;
    }
  }

  const double scale = 1.0 / std::sqrt(h);
  for (auto& vec : pairs.vectors) {
    for (double& x : vec) x *= scale;
    fix_sign(vec);
  }
  result.energies = std::move(pairs.values);
  result.wavefunctions = std::move(pairs.vectors);

  if (options.check_boundary) {
    for (std::size_t k = 0; k < result.wavefunctions.size(); ++k) {
      const auto& psi = result.wavefunctions[k];
      const double edge = std::max(std::abs(psi.front()), std::abs(psi.back()));
      if (edge > 1e-6 * max_abs(psi)) {
        throw NumericalError("state " + std::to_string(k) +
                             " leaks to the box boundary; enlarge half_width");
      }
    }
  }

  result.parities = classify_parity(result, options.parity_tol);
  for (const auto& psi : result.wavefunctions) result.node_counts.push_back(count_nodes(psi));
  result.regions = options.regions.empty() ? scan_regions(result.x, v, grid) : options.regions;
  result.localization = localization_weights(result, result.regions);
  result.splittings = doublet_splittings(result, options.gap_factor);
  return result;
}

SpectralResult solve(const ArnoldPotential& pot, const GridSpec& grid, int n_states,
                     SolveOptions options) {
  GridSpec g = grid;
  if (!g.lambda_sq) g.lambda_sq = pot.lambda_sq();
  if (options.regions.empty()) {
    try {
      options.regions = well_regions(pot, g);
    } catch (const DomainError&) {
      // Complex shells: fall back to the maxima found on the grid.
    }
  }
  return solve([&pot](double x) { return pot.evaluate(x); }, g, n_states, options);
}

ConvergenceStudy convergence_study(const std::function<double(double)>& potential,
                                   const GridSpec& grid, int refinements, int n_states) {
  if (refinements < 1) throw DomainError("convergence study needs at least one refinement");
  ConvergenceStudy study;
  GridSpec g = grid;
  for (int level = 0; level <= refinements; ++level) {
    const auto r = solve(potential, g, n_states);
    study.steps.push_back(g.step());
    study.points.push_back(g.points);
    study.energies.push_back(r.energies);
    g = g.refined();
  }
  for (std::size_t l = 2; l < study.energies.size(); ++l) {
    std::vector<double> row;
    for (int k = 0; k < n_states; ++k) {
      const double coarse = study.energies[l - 1][k] - study.energies[l - 2][k];
      const double fine = study.energies[l][k] - study.energies[l - 1][k];
      row.push_back(coarse / fine);
      if (!(coarse / fine > 1.0)) {
        study.warnings.push_back("state " + std::to_string(k) + ": non-monotone convergence at M=" +
                                 std::to_string(study.points[l]) +
                                 " (potential too stiff for the grid)");
      }
    }
    study.ratios.push_back(std::move(row));
  }
  const auto& fine = study.energies.back();
  const auto& coarse = study.energies[study.energies.size() - 2];
  for (int k = 0; k < n_states; ++k) study.extrapolated.push_back(fine[k] + (fine[k] - coarse[k]) / 3.0);
  return study;
}

ConvergenceStudy convergence_study(const ArnoldPotential& pot, const GridSpec& grid,
                                   int refinements, int n_states) {
  GridSpec g = grid;
  if (!g.lambda_sq) g.lambda_sq = pot.lambda_sq();
  return convergence_study([&pot](double x) { return pot.evaluate(x); }, g, refinements, n_states);
}

GridSpec auto_grid(const ArnoldPotential& pot, int n_states) {
  const double lambda = std::sqrt(pot.lambda_sq());
  double deepest = std::numeric_limits<double>::infinity();
  double omega_max = 0.0;
  double omega_outer = 0.0;
  double outer = 0.0;
  for (const auto& e : extrema(pot)) {
    if (e.kind != ExtremumKind::minimum) continue;
    const double t2 = taylor_at(pot, e.position)[2];
    const double omega = std::sqrt(std::max(t2, 0.0));
    deepest = std::min(deepest, e.value);
    omega_max = std::max(omega_max, omega);
    if (e.position >= outer) {
      outer = e.position;
      omega_outer = omega;
    }
  }
  if (!(omega_max > 0.0)) throw DomainError("no curved minimum; give the grid explicitly");
  const double top = deepest + (2.0 * n_states + 1.0) * lambda * omega_max;
  const double target = top + 10.0 * lambda * omega_outer;
  const double width = std::sqrt(lambda / omega_max);
  // March outward until V clears the target and the WKB decay exponent of
  // the top level, int sqrt(V - E) / Lambda dx, reaches 25.
  const double step = 1e-3 * std::max(outer, width);
  double l = outer;
  double decay = 0.0;
  while (pot.evaluate(l) < target || decay < 25.0) {
    const double excess = pot.evaluate(l + 0.5 * step) - top;
    if (excess > 0.0) decay += std::sqrt(excess) / lambda * step;
    l += step;
  }
  GridSpec g;
  g.half_width = l;
  g.lambda_sq = pot.lambda_sq();
  const double h = width / 25.0;
  int m = static_cast<int>(std::ceil(2.0 * l / h));
  m = std::clamp(m, 1001, 64001);
  if (m % 2 == 0) ++m;
  g.points = m;
  return g;
}

}  // namespace arnold::spectral
