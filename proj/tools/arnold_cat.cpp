// arnold-cat: command line front end for the symmetric Arnold potentials.
//
// Exit codes: 0 success, 1 usage, 2 invalid input, 3 numerical failure.

#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "arnold/catastrophe.hpp"
#include "arnold/config.hpp"
#include "arnold/diophantine.hpp"
#include "arnold/figures.hpp"
#include "arnold/output.hpp"
#include "arnold/perturbation.hpp"
#include "arnold/potential.hpp"
#include "arnold/spectral.hpp"

namespace {

using namespace arnold;

constexpr int kUsage = 1;
constexpr int kInvalid = 2;
constexpr int kNumerical = 3;

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    io::write_file(path, content);
  }
}

std::vector<Rational> rationals(const std::vector<std::string>& items) {
  std::vector<Rational> out;
  for (const auto& s : items) out.push_back(parse_rational(s));
  return out;
}

// build ----------------------------------------------------------------------

struct BuildArgs {
  std::string config;
  std::vector<std::string> params, params_sq, couplings, arnold_couplings;
  std::vector<std::int64_t> weights;
  std::string lambda_sq = "1";
  bool exact = false;
  bool show_extrema = false;
  bool landmarks = false;
  std::vector<double> at;
  std::optional<std::string> taylor;
  std::string out;
};

io::PotentialSpec spec_from_flags(const BuildArgs& a) {
  int given = 0;
  io::PotentialSpec spec;
  auto take = [&](const std::vector<std::string>& v, io::PotentialForm form) {
    if (v.empty()) return;
    ++given;
    spec.form = form;
    spec.values = rationals(v);
  };
  take(a.params, io::PotentialForm::params);
  take(a.params_sq, io::PotentialForm::params_sq);
  take(a.couplings, io::PotentialForm::couplings);
  take(a.arnold_couplings, io::PotentialForm::arnold_couplings);
  if (given != 1) {
    throw io::ConfigError({"give exactly one of --params, --params-sq, --couplings, --arnold-couplings"});
  }
  if (!a.weights.empty()) spec.weights = a.weights;
  spec.lambda_sq = parse_rational(a.lambda_sq);
  if (spec.lambda_sq <= 0) throw io::ConfigError({"--lambda-sq must be positive"});
  return spec;
}

int run_build(const BuildArgs& a) {
  io::PotentialSpec spec;
  if (!a.config.empty()) {
    const auto cfg = io::load_config(a.config);
    if (!cfg.potential) throw io::ConfigError({"potential: required for build"});
    spec = *cfg.potential;
  } else {
    spec = spec_from_flags(a);
  }
  const auto shift = io::make_shift(spec);
  ArnoldPotential pot = io::make_potential(spec);
  if (a.exact) {
    pot = build_potential(shift, {.lambda_sq = to_double(spec.lambda_sq), .require_integral_formulas = true});
  }
  emit(a.out, io::potential_to_json(pot, shift));
  if (a.show_extrema) std::cout << io::extrema_csv(extrema(shift));
  if (a.landmarks) {
    for (const auto& l : closed_form_landmarks(shift)) {
      std::cout << l.name << ": V(+-" << io::format_number(l.position) << ") = " << io::format_number(l.value)
                << '\n';
    }
  }
  for (double x : a.at) std::cout << "V(" << io::format_number(x) << ") = " << io::format_number(pot.evaluate(x)) << '\n';
  if (a.taylor) {
    const Rational x0 = parse_rational(*a.taylor);
    const auto t = taylor_at(pot, x0);
    for (std::size_t j = 0; j < t.size(); ++j) {
      std::cout << "t_" << j << " = " << to_string(t[j]) << '\n';
    }
  }
  return 0;
}

// weights --------------------------------------------------------------------

int run_weights(int n, std::int64_t bound, bool formulas, bool compare) {
  const auto found = diophantine::minimal_weights(n, {.bound = bound});
  std::cout << diophantine::format_weights(found.weights) << '\n';
  if (compare) {
    if (auto published = diophantine::published_weights(n)) {
      const bool same = *published == found.weights;
      std::cout << "published tuple " << diophantine::format_weights(*published) << ": "
                << (same ? "identical" : "differs") << '\n';
    } else {
      std::cout << "no published tuple for N=" << n << '\n';
    }
  }
  if (formulas) {
    const auto polys = diophantine::coupling_formulas(n, found.weights);
    for (std::size_t m = 0; m < polys.size(); ++m) {
      std::cout << "c_" << (m + 1) << "^2 = " << diophantine::format_polynomial(polys[m]) << '\n';
    }
  }
  return 0;
}

// solve / estimate -----------------------------------------------------------

io::RunConfig potential_config(const std::string& path) {
  auto cfg = io::load_config(path);
  if (!cfg.potential) throw io::ConfigError({"potential: required"});
  return cfg;
}

spectral::SpectralResult solve_config(const io::RunConfig& cfg, const ArnoldPotential& pot) {
  const auto grid = cfg.grid ? *cfg.grid : spectral::auto_grid(pot, cfg.states);
  spectral::SolveOptions options;
  options.gap_factor = cfg.gap_factor;
  return spectral::solve(pot, grid, cfg.states, options);
}

int run_solve(const std::string& config, std::string out, std::string psi, std::string svg, int refine) {
  const auto cfg = potential_config(config);
  const auto pot = io::make_potential(*cfg.potential);
  const auto result = solve_config(cfg, pot);
  if (out.empty()) out = cfg.outputs.csv;
  if (psi.empty()) psi = cfg.outputs.psi;
  if (svg.empty()) svg = cfg.outputs.svg;
  emit(out, io::spectrum_csv(result));
  if (!psi.empty()) io::write_file(psi, io::wavefunction_csv(result));
  if (!svg.empty()) {
    const double l = io::plot_half_width(pot);
    io::write_file(svg, io::potential_svg([&pot](double x) { return pot.evaluate(x); }, -l, l, result.energies,
                                          "lowest levels"));
  }
  if (refine > 0) {
    const auto study = spectral::convergence_study(pot, result.grid, refine, cfg.states);
    std::cerr << "M";
    for (int k = 0; k < cfg.states; ++k) std::cerr << ",E_" << k;
    std::cerr << '\n';
    for (std::size_t l = 0; l < study.points.size(); ++l) {
      std::cerr << study.points[l];
      for (double e : study.energies[l]) std::cerr << ',' << io::format_number(e);
      std::cerr << '\n';
    }
    std::cerr << "extrapolated";
    for (double e : study.extrapolated) std::cerr << ',' << io::format_number(e);
    std::cerr << '\n';
    for (const auto& w : study.warnings) std::cerr << "warning: " << w << '\n';
  }
  return 0;
}

int run_estimate(const std::string& config, bool with_numeric, const std::string& out) {
  const auto cfg = potential_config(config);
  const auto pot = io::make_potential(*cfg.potential);
  const auto wells = perturbation::well_models(pot);
  std::vector<std::optional<double>> numeric;
  if (with_numeric) {
    const auto result = solve_config(cfg, pot);
    // Lowest state localized (> 0.5) in each well's regions.
    const int n = pot.n();
    for (const auto& w : wells) {
      // minimum on shell j sits in region (N + j) / 2 and its mirror
      const int right = (n + w.ring_index) / 2;
      std::vector<int> regions = {right};
      if (n - right != right) regions.push_back(n - right);
      std::optional<double> found;
      for (std::size_t k = 0; k < result.energies.size() && !found; ++k) {
        double weight = 0.0;
        for (int r : regions) weight += result.localization[k][r];
        if (weight > 0.5) found = result.energies[k];
      }
      numeric.push_back(found);
    }
  }
  emit(out.empty() ? cfg.outputs.csv : out, io::estimate_csv(wells, cfg.n_max, numeric));
  return 0;
}

// locus / scan ---------------------------------------------------------------

struct PathArgs {
  std::string config;
  std::string kind = "k5_alpha_beta";
  std::map<std::string, std::string> scalars;  // --alpha 2
  std::map<std::string, std::string> ranges;   // --eta-range 0:0.2:0.002
  std::string estimator = "harmonic";
  std::string lambda_sq;
  int scan_points = 200;
  double tol = 1e-8;
  int states = 8;
  std::string out;
  std::string svg;
};

struct PathDefaults {
  std::string fixed;
  std::string swept;
  std::string swept_range;
};

PathDefaults defaults_for(catastrophe::PathKind kind, const PathArgs& a) {
  switch (kind) {
    case catastrophe::PathKind::k5_mu_ratio: return {"beta", "r", "0.01:3"};
    case catastrophe::PathKind::k5_alpha_beta:
      // a scalar decides the fixed parameter, then a stepped grid
      if (!a.scalars.count("alpha") &&
          (a.scalars.count("beta") || (a.ranges.count("beta") && !a.ranges.count("alpha")))) {
        return {"beta", "alpha", "0.01:6"};
      }
      return {"alpha", "beta", "0.01:6"};
    case catastrophe::PathKind::k7_eta: return {"alpha", "eta", "0:1"};
    case catastrophe::PathKind::k7_sigma: return {"alpha", "sigma", "0.05:3"};
  }
  return {};
}

io::PathSpec path_from_flags(const PathArgs& a, bool fixed_is_grid) {
  io::PathSpec p;
  p.kind = catastrophe::parse_path_kind(a.kind);
  const auto d = defaults_for(p.kind, a);
  p.swept = d.swept;
  p.fixed_name = d.fixed;
  const auto swept_text = a.ranges.count(d.swept) ? a.ranges.at(d.swept) : d.swept_range;
  const auto sr = io::parse_range(swept_text);
  p.lo = sr.lo;
  p.hi = sr.hi;
  p.step = sr.step.value_or(0.0);
  if (fixed_is_grid && a.ranges.count(d.fixed)) {
    const auto fr = io::parse_range(a.ranges.at(d.fixed));
    p.fixed_values = fr.step ? catastrophe::range(fr.lo, fr.hi, *fr.step) : std::vector<double>{fr.lo, fr.hi};
  }
  if (a.scalars.count(d.fixed)) {
    p.fixed[d.fixed] = to_double(parse_rational(a.scalars.at(d.fixed)));
    if (fixed_is_grid && p.fixed_values.empty()) p.fixed_values = {p.fixed[d.fixed]};
  } else if (!p.fixed_values.empty()) {
    p.fixed[d.fixed] = p.fixed_values.front();
  } else {
    throw io::ConfigError({"give --" + d.fixed + (fixed_is_grid ? " or --" + d.fixed + "-range" : "")});
  }
  for (const auto& [name, value] : a.scalars) {
    if (name != d.fixed) throw io::ConfigError({"--" + name + " does not apply to path " + a.kind});
  }
  for (const auto& [name, value] : a.ranges) {
    if (name != d.fixed && name != d.swept) {
      throw io::ConfigError({"--" + name + "-range does not apply to path " + a.kind});
    }
  }
  if (!a.lambda_sq.empty()) p.fixed["lambda_sq"] = to_double(parse_rational(a.lambda_sq));
  p.scan_points = a.scan_points;
  p.tol = a.tol;
  return p;
}

int run_locus(const PathArgs& a) {
  io::PathSpec p;
  auto estimator = catastrophe::parse_estimator(a.estimator);
  if (!a.config.empty()) {
    const auto cfg = io::load_config(a.config);
    if (!cfg.path) throw io::ConfigError({"path: required for locus"});
    p = *cfg.path;
    estimator = cfg.estimator;
  } else {
    p = path_from_flags(a, true);
  }
  if (p.fixed_values.empty()) {
    p.fixed_name = p.fixed.begin()->first == "lambda_sq" ? std::next(p.fixed.begin())->first : p.fixed.begin()->first;
    p.fixed_values = {p.fixed.at(p.fixed_name)};
  }
  const auto path = io::make_path(p);
  catastrophe::NumericOptions numeric;
  numeric.n_states = a.states;
  const auto points =
      catastrophe::locus_curve(path, p.fixed_name, p.fixed_values, estimator, p.scan_points, p.tol, numeric);
  emit(a.out, io::locus_csv(points));
  if (!a.svg.empty()) {
    std::map<std::string, io::Series> branches;
    for (const auto& pt : points) {
      if (!pt.found) continue;
      auto& s = branches[pt.branch];
      s.label = pt.branch + " branch";
      s.x.push_back(pt.fixed_value);
      s.y.push_back(pt.critical_value);
    }
    std::vector<io::Series> series;
    for (auto& [k, s] : branches) series.push_back(std::move(s));
    io::write_file(a.svg, io::curves_svg(series, "critical " + p.swept, p.fixed_name, p.swept));
  }
  return 0;
}

int run_scan(const PathArgs& a) {
  io::PathSpec p;
  if (!a.config.empty()) {
    const auto cfg = io::load_config(a.config);
    if (!cfg.path) throw io::ConfigError({"path: required for scan"});
    p = *cfg.path;
  } else {
    p = path_from_flags(a, false);
  }
  if (!(p.step > 0.0)) throw io::ConfigError({"scan needs a swept range with a step, e.g. 0:0.2:0.002"});
  const auto path = io::make_path(p);
  catastrophe::NumericOptions numeric;
  numeric.n_states = a.states;
  const auto scan = catastrophe::relocalization_scan(path, catastrophe::range(p.lo, p.hi, p.step), numeric);
  emit(a.out, io::scan_csv(scan));
  if (scan.flip) {
    std::cerr << "ground state relocalizes near " << p.swept << " = " << io::format_number(*scan.flip) << '\n';
  } else {
    std::cerr << "no relocalization on the grid (monotone)\n";
  }
  return 0;
}

int run_reproduce(const std::string& figure, const std::string& out_dir) {
  const auto result = io::reproduce(figure, out_dir);
  for (const auto& note : result.notes) std::cout << note << '\n';
  for (const auto& file : result.files) std::cout << "wrote " << file << '\n';
  return 0;
}

void add_path_flags(CLI::App* cmd, PathArgs& a) {
  cmd->add_option("--config", a.config, "Run configuration (JSON) with a path section");
  cmd->add_option("--path", a.kind, "k5_mu_ratio | k5_alpha_beta | k7_eta | k7_sigma");
  for (const char* name : {"alpha", "beta", "r", "eta", "sigma"}) {
    const std::string n = name;
    cmd->add_option_function<std::string>("--" + n, [&a, n](const std::string& v) { a.scalars[n] = v; },
                                          "Fixed value of " + n);
    cmd->add_option_function<std::string>("--" + n + "-range",
                                          [&a, n](const std::string& v) { a.ranges[n] = v; },
                                          "lo:hi[:step] for " + n);
  }
  cmd->add_option("--lambda-sq", a.lambda_sq, "Mass term Lambda^2 (default 1)");
  cmd->add_option("--states", a.states, "States per numeric solve")->check(CLI::PositiveNumber);
  cmd->add_option("--out", a.out, "CSV output (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arnold-cat: symmetric Arnold multi-well potentials, spectra and relocalization loci"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Reserved; every operation is deterministic");

  std::function<int()> action;

  BuildArgs build;
  auto* b = app.add_subcommand("build", "Couplings, extrema and Taylor data of a potential");
  b->add_option("--config", build.config, "Run configuration (JSON)");
  b->add_option("--params", build.params, "alpha,beta,... (numbers or p/q)")->delimiter(',');
  b->add_option("--params-sq", build.params_sq, "alpha^2,beta^2,...")->delimiter(',');
  b->add_option("--couplings", build.couplings, "c_1^2,...,c_N^2 (binomial convention)")->delimiter(',');
  b->add_option("--arnold-couplings", build.arnold_couplings, "raw c_1,...,c_2N")->delimiter(',');
  b->add_option("--weights", build.weights, "w_1,...,w_{N-1}")->delimiter(',');
  b->add_option("--lambda-sq", build.lambda_sq, "Mass term Lambda^2");
  b->add_flag("--exact", build.exact, "Reject weights whose coupling formulas are not integral");
  b->add_flag("--extrema", build.show_extrema, "Print the stationary points");
  b->add_flag("--landmarks", build.landmarks, "Print closed-form depths and heights (N <= 3)");
  b->add_option("--at", build.at, "Evaluate V at these x")->delimiter(',');
  b->add_option("--taylor", build.taylor, "Exact Taylor coefficients at x0");
  b->add_option("--out", build.out, "Potential JSON output (default stdout)");
  b->callback([&] { action = [&] { return run_build(build); }; });

  int n = 0;
  std::int64_t bound = 512;
  bool formulas = false, compare = false;
  auto* w = app.add_subcommand("weights", "Minimal integer weight tuple for N barriers");
  w->add_option("--n", n, "Barrier count N")->required()->check(CLI::Range(1, 10));
  w->add_option("--bound", bound, "Largest weight tried per position")->check(CLI::PositiveNumber);
  w->add_flag("--emit-formulas", formulas, "Print the coupling polynomials");
  w->add_flag("--compare", compare, "Compare with the published tuple");
  w->callback([&] { action = [&] { return run_weights(n, bound, formulas, compare); }; });

  std::string solve_config_path, solve_out, psi_out, solve_svg;
  int refine = 0;
  auto* s = app.add_subcommand("solve", "Lowest bound states on a finite-difference grid");
  s->add_option("--config", solve_config_path, "Run configuration (JSON)")->required();
  s->add_option("--out", solve_out, "Spectrum CSV (default: outputs.csv or stdout)");
  s->add_option("--dump-psi", psi_out, "Wavefunction CSV");
  s->add_option("--svg", solve_svg, "Potential and level plot");
  s->add_option("--refine", refine, "Also run a convergence study with this many refinements");
  s->callback([&] { action = [&] { return run_solve(solve_config_path, solve_out, psi_out, solve_svg, refine); }; });

  std::string estimate_config, estimate_out;
  bool with_numeric = false;
  auto* e = app.add_subcommand("estimate", "Harmonic deep-well level estimates per well");
  e->add_option("--config", estimate_config, "Run configuration (JSON)")->required();
  e->add_flag("--with-numeric", with_numeric, "Add the lowest numerical level localized in each well");
  e->add_option("--out", estimate_out, "CSV output (default stdout)");
  e->callback([&] { action = [&] { return run_estimate(estimate_config, with_numeric, estimate_out); }; });

  PathArgs locus;
  auto* l = app.add_subcommand("locus", "Critical curve of the inner/outer ground-state gap");
  add_path_flags(l, locus);
  l->add_option("--estimator", locus.estimator, "harmonic | numeric");
  l->add_option("--scan-points", locus.scan_points, "Samples of the swept interval")->check(CLI::Range(2, 100000));
  l->add_option("--tol", locus.tol, "Bisection width on the swept parameter");
  l->add_option("--svg", locus.svg, "Plot of the branches");
  l->callback([&] { action = [&] { return run_locus(locus); }; });

  PathArgs scan;
  auto* sc = app.add_subcommand("scan", "Ground-state localization along a path (numeric)");
  add_path_flags(sc, scan);
  sc->callback([&] { action = [&] { return run_scan(scan); }; });

  std::string figure, out_dir = ".";
  auto* r = app.add_subcommand("reproduce", "Regenerate a figure from its bundled configuration");
  r->add_option("figure", figure, "fig1 .. fig6")->required();
  r->add_option("--out-dir", out_dir, "Directory for CSV and SVG files");
  r->callback([&] { action = [&] { return run_reproduce(figure, out_dir); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kUsage;
  }

  try {
    return action ? action() : kUsage;
  } catch (const arnold::NumericalError& err) {
    std::cerr << "numerical failure: " << err.what() << '\n';
    return kNumerical;
  } catch (const arnold::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kInvalid;
  }
}
