#include "arnold/catastrophe.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "arnold/parallel.hpp"
#include "arnold/perturbation.hpp"

namespace arnold::catastrophe {
namespace {

struct PathShape {
  PathKind kind;
  const char* name;
  std::vector<std::pair<std::string, std::string>> fixed_swept;  // allowed (fixed, swept)
};

const std::vector<PathShape>& shapes() {
  static const std::vector<PathShape> table = {
      {PathKind::k5_mu_ratio, "k5_mu_ratio", {{"beta", "r"}}},
      {PathKind::k5_alpha_beta, "k5_alpha_beta", {{"alpha", "beta"}, {"beta", "alpha"}}},
      {PathKind::k7_eta, "k7_eta", {{"alpha", "eta"}}},
      {PathKind::k7_sigma, "k7_sigma", {{"alpha", "sigma"}}},
  };
  return table;
}

const PathShape& shape_of(PathKind kind) {
  for (const auto& s : shapes()) {
    if (s.kind == kind) return s;
  }
  throw DomainError("unknown path kind");
}

double sum_weights(const std::vector<double>& weights, const std::vector<int>& regions) {
  double total = 0.0;
  for (int r : regions) {
    if (r >= 0 && r < static_cast<int>(weights.size())) total += weights[r];
  }
  return total;
}

LocusSample harmonic_gap(const FamilyPath& path, double value) {
  const auto shift = path.at(value);
  if (!shift.strictly_increasing()) {
    throw DomainError("degenerate shells at " + path.swept() + "=" + std::to_string(value) +
                      ": not a multi-well point");
  }
  const int n = shift.n();
  const int inner_ring = n % 2 == 0 ? 0 : 1;
  LocusSample out;
  out.value = value;
  out.estimator = Estimator::harmonic;
  bool have_inner = false, have_outer = false;
  for (const auto& w : perturbation::well_models(shift, path.lambda_sq())) {
    const double e0 = perturbation::harmonic_levels(w, 0)[0];
    if (w.ring_index == inner_ring) {
      out.inner_energy = e0;
      have_inner = true;
    }
    if (w.ring_index == n) {
      out.outer_energy = e0;
      have_outer = true;
    }
  }
  if (!have_inner || !have_outer) throw DomainError("path point lacks an inner or outer well");
  out.gap = out.outer_energy - out.inner_energy;
  return out;
}

spectral::SpectralResult solve_point(const FamilyPath& path, double value,
                                     const NumericOptions& numeric) {
  const auto shift = path.at(value);
  if (!shift.strictly_increasing()) {
    throw DomainError("degenerate shells at " + path.swept() + "=" + std::to_string(value) +
                      ": not a multi-well point");
  }
  const auto pot = build_potential(shift, {.lambda_sq = path.lambda_sq()});
  const auto grid = numeric.grid ? *numeric.grid : spectral::auto_grid(pot, numeric.n_states);
  return spectral::solve(pot, grid, numeric.n_states);
}

LocusSample numeric_gap(const FamilyPath& path, double value, const NumericOptions& numeric) {
  const auto result = solve_point(path, value, numeric);
  const int n = path.at(value).n();
  const auto inner = inner_regions(n);
  const auto outer = outer_regions(n);
  std::optional<double> e_inner, e_outer;
  for (std::size_t k = 0; k < result.energies.size(); ++k) {
    const auto& w = result.localization[k];
    if (!e_inner && sum_weights(w, inner) > 0.5) e_inner = result.energies[k];
    if (!e_outer && sum_weights(w, outer) > 0.5) e_outer = result.energies[k];
  }
  if (!e_inner || !e_outer) {
    throw NumericalError(std::string("no ") + (e_inner ? "outer" : "inner") +
                         "-class state among the lowest " + std::to_string(numeric.n_states) +
                         " at " + path.swept() + "=" + std::to_string(value));
  }
  LocusSample out;
  out.value = value;
  out.estimator = Estimator::numeric;
  out.inner_energy = *e_inner;
  out.outer_energy = *e_outer;
  out.gap = *e_outer - *e_inner;
  return out;
}

LocusSample bisect(const FamilyPath& path, Estimator estimator, double lo, double hi,
                   double glo, double tol, const NumericOptions& numeric) {
  while (hi - lo >= tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = gap(path, mid, estimator, numeric).gap;
    if (gm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  LocusSample out = gap(path, 0.5 * (lo + hi), estimator, numeric);
  out.bracketed = true;
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  return out;
}

}  // namespace

std::string to_string(PathKind kind) { return shape_of(kind).name; }

PathKind parse_path_kind(const std::string& text) {
  for (const auto& s : shapes()) {
    if (text == s.name) return s.kind;
  }
  throw DomainError("unknown path '" + text + "' (k5_mu_ratio, k5_alpha_beta, k7_eta, k7_sigma)");
}

std::string to_string(Estimator estimator) {
  return estimator == Estimator::harmonic ? "harmonic" : "numeric";
}

Estimator parse_estimator(const std::string& text) {
  if (text == "harmonic") return Estimator::harmonic;
  if (text == "numeric") return Estimator::numeric;
  throw DomainError("unknown estimator '" + text + "' (harmonic, numeric)");
}

FamilyPath::FamilyPath(PathKind kind, std::map<std::string, double> fixed, std::string swept,
                       double lo, double hi)
    : kind_(kind), fixed_(std::move(fixed)), swept_(std::move(swept)), lo_(lo), hi_(hi) {
  const auto& shape = shape_of(kind_);
  bool matched = false;
  for (const auto& [f, s] : shape.fixed_swept) {
    if (s == swept_ && fixed_.count(f)) matched = true;
  }
  if (!matched) {
    throw DomainError("path " + std::string(shape.name) + " cannot sweep '" + swept_ +
                      "' with the given fixed parameters");
  }
  for (const auto& [key, value] : fixed_) {
    bool known = key == "lambda_sq";
    for (const auto& [f, s] : shape.fixed_swept) known = known || (key == f && s == swept_);
    if (!known) throw DomainError("path " + std::string(shape.name) + " has no fixed parameter '" + key + "'");
    if (!std::isfinite(value)) throw DomainError("fixed parameter '" + key + "' must be finite");
  }
  if (!(lo_ <= hi_) || !std::isfinite(lo_) || !std::isfinite(hi_)) {
    throw DomainError("swept interval must satisfy lo <= hi");
  }
  if (fixed_.count("lambda_sq") && !(fixed_.at("lambda_sq") > 0.0)) {
    throw DomainError("lambda_sq must be positive");
  }
}

double FamilyPath::lambda_sq() const {
  auto it = fixed_.find("lambda_sq");
  return it == fixed_.end() ? 1.0 : it->second;
}

FamilyPath FamilyPath::with_interval(double lo, double hi) const {
  return FamilyPath(kind_, fixed_, swept_, lo, hi);
}

FamilyPath FamilyPath::with_fixed(const std::string& name, double value) const {
  auto fixed = fixed_;
  if (!fixed.count(name)) throw DomainError("path has no fixed parameter '" + name + "'");
  fixed[name] = value;
  return FamilyPath(kind_, std::move(fixed), swept_, lo_, hi_);
}

ShiftParameters FamilyPath::at(double value) const {
  auto get = [&](const std::string& key) { return key == swept_ ? value : fixed_.at(key); };
  std::vector<double> params;
  switch (kind_) {
    case PathKind::k5_mu_ratio: {
      const double beta = get("beta");
      params = {value * beta, beta};
      break;
    }
    case PathKind::k5_alpha_beta:
      params = {get("alpha"), get("beta")};
      break;
    case PathKind::k7_eta: {
      const double alpha = get("alpha");
      params = {alpha, alpha, (1.0 + value) * alpha};
      break;
    }
    case PathKind::k7_sigma: {
      const double alpha = get("alpha");
      params = {alpha, value * alpha, value * alpha};
      break;
    }
  }
  for (double p : params) {
    if (!(p >= 0.0)) throw DomainError("path point gives a negative parameter");
  }
  return ShiftParameters::from_params(std::move(params));
}

std::vector<int> inner_regions(int n) {
  if (n % 2 == 0) return {n / 2};
  return {(n - 1) / 2, (n + 1) / 2};
}

std::vector<int> outer_regions(int n) { return {0, n}; }

LocusSample gap(const FamilyPath& path, double value, Estimator estimator,
                const NumericOptions& numeric) {
  return estimator == Estimator::harmonic ? harmonic_gap(path, value)
                                          : numeric_gap(path, value, numeric);
}

LocusSample critical_root(const FamilyPath& path, Estimator estimator, double tol,
                          const NumericOptions& numeric) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const double glo = gap(path, path.lo(), estimator, numeric).gap;
  const double ghi = gap(path, path.hi(), estimator, numeric).gap;
  if (glo == 0.0) {
    auto s = gap(path, path.lo(), estimator, numeric);
    s.bracketed = true;
    s.bracket_lo = s.bracket_hi = path.lo();
    return s;
  }
  if ((glo < 0.0) == (ghi < 0.0)) {
    throw NoCatastrophe("no catastrophe on path: gap keeps its sign on [" +
                        std::to_string(path.lo()) + ", " + std::to_string(path.hi()) + "]");
  }
  return bisect(path, estimator, path.lo(), path.hi(), glo, tol, numeric);
}

std::vector<LocusPoint> locus_curve(const FamilyPath& path, const std::string& fixed_name,
                                    const std::vector<double>& fixed_values, Estimator estimator,
                                    int scan_points, double tol, const NumericOptions& numeric) {
  if (scan_points < 2) throw DomainError("scan needs at least two points");
  auto per_value = parallel_map<std::vector<LocusPoint>>(fixed_values.size(), [&](std::size_t i) {
    std::vector<LocusPoint> points;
    const double fv = fixed_values[i];
    try {
      const auto p = path.with_fixed(fixed_name, fv);
      std::vector<double> xs, gs;
      for (int k = 0; k < scan_points; ++k) {
        const double x = p.lo() + (p.hi() - p.lo()) * k / (scan_points - 1);
        try {
          gs.push_back(gap(p, x, estimator, numeric).gap);
          xs.push_back(x);
        } catch (const DomainError&) {
          // degenerate sample (e.g. a vanishing parameter): skip it
        }
      }
      for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        if ((gs[k] < 0.0) == (gs[k + 1] < 0.0)) continue;
        const auto root = bisect(p, estimator, xs[k], xs[k + 1], gs[k], tol, numeric);
        LocusPoint lp;
        lp.fixed_value = fv;
        lp.branch = gs[k] < 0.0 ? "lower" : "upper";
        lp.critical_value = root.value;
        lp.delta_residual = root.gap;
        lp.found = true;
        points.push_back(lp);
      }
    } catch (const Error&) {
      points.clear();
    }
    if (points.empty()) points.push_back({fv, "none", 0.0, 0.0, false});
    return points;
  });
  std::vector<LocusPoint> out;
  for (auto& v : per_value) out.insert(out.end(), v.begin(), v.end());
  return out;
}

ScanResult relocalization_scan(const std::function<spectral::SpectralResult(double)>& solve_at,
                               const std::vector<double>& values, const std::vector<int>& inner,
                               const std::vector<int>& outer) {
  ScanResult out;
  out.samples = parallel_map<ScanSample>(values.size(), [&](std::size_t i) {
    const auto r = solve_at(values[i]);
    ScanSample s;
    s.value = values[i];
    s.ground_energy = r.energies.front();
    s.ground_parity = r.parities.front();
    s.inner_weight = sum_weights(r.localization.front(), inner);
    s.outer_weight = sum_weights(r.localization.front(), outer);
    s.dominant = s.inner_weight > 0.5 ? "inner" : (s.outer_weight > 0.5 ? "outer" : "other");
    for (std::size_t k = 0; k < r.localization.size(); ++k) {
      if (sum_weights(r.localization[k], outer) > 0.5) {
        s.lowest_outer_state = static_cast<int>(k);
        break;
      }
    }
    return s;
  });
  for (std::size_t i = 0; i + 1 < out.samples.size(); ++i) {
    const auto& a = out.samples[i];
    const auto& b = out.samples[i + 1];
    if (a.dominant == b.dominant) continue;
    out.monotone = false;
    if (!out.flip) {
      const double fa = a.inner_weight - 0.5;
      const double fb = b.inner_weight - 0.5;
      out.flip = (fa < 0.0) != (fb < 0.0) ? a.value + (b.value - a.value) * fa / (fa - fb)
                                          : 0.5 * (a.value + b.value);
    }
  }
  return out;
}

ScanResult relocalization_scan(const FamilyPath& path, const std::vector<double>& values,
                               const NumericOptions& numeric) {
  const int n = path.at(path.lo()).n();
  return relocalization_scan(
      [&](double v) { return solve_point(path, v, numeric); }, values, inner_regions(n),
      outer_regions(n));
}

std::vector<double> range(double lo, double hi, double step) {
  if (!(step > 0.0)) throw DomainError("range step must be positive");
  if (!(hi >= lo)) throw DomainError("range needs lo <= hi");
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-3));
  for (long i = 0; i <= count; ++i) out.push_back(lo + step * static_cast<double>(i));
  return out;
}

}  // namespace arnold::catastrophe
