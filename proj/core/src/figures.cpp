#include "arnold/figures.hpp"

#include <cmath>
#include <filesystem>
#include <map>

#include "arnold/output.hpp"

namespace arnold::io {
namespace {

const std::map<std::string, std::string>& configs() {
  static const std::map<std::string, std::string> table = {
      {"fig1", R"({
  "schema": 1,
  "potential": {"arnold_couplings": ["-61/25", 0, "36/25", 0], "lambda_sq": "1/36"},
  "grid": {"half_width": 2.2, "points": 8001},
  "states": 7
})"},
      {"fig2", R"({
  "schema": 1,
  "potential": {"N": 3, "params": [1, 1, 1]}
})"},
      {"fig3", R"({
  "schema": 1,
  "path": {"kind": "k5_alpha_beta", "fixed": {"alpha": 1}, "swept": "beta",
           "range": "0.01:6", "fixed_values": "0.3:3:0.05", "scan_points": 600}
})"},
      {"fig4", R"({
  "schema": 1,
  "path": {"kind": "k7_eta", "fixed": {"alpha": 1}, "swept": "eta",
           "range": "0:1", "fixed_values": "1:4:0.05", "scan_points": 400}
})"},
      {"fig5", R"({
  "schema": 1,
  "potential": {"N": 4, "params_sq": [1, "2/3", "5/6", "1/3"], "weights": [4, 6, 12]}
})"},
      {"fig6", R"({
  "schema": 1,
  "potential": {"N": 5, "params_sq": ["15/16", "8/16", "6/16", "6/16", "5/16"], "weights": [5, 10, 10, 10]}
})"},
  };
  return table;
}

std::string join_path(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

void curve_figure(const std::string& name, const RunConfig& cfg, const std::string& dir,
                  FigureOutput& out) {
  const auto pot = make_potential(*cfg.potential);
  const double l = plot_half_width(pot);
  auto v = [&pot](double x) { return pot.evaluate(x); };
  const auto csv = join_path(dir, name + "_potential.csv");
  const auto ext = join_path(dir, name + "_extrema.csv");
  const auto svg = join_path(dir, name + ".svg");
  write_file(csv, curve_csv(v, -l, l, 801));
  write_file(ext, extrema_csv(extrema(make_shift(*cfg.potential))));
  std::string couplings;
  for (const auto& c : *pot.exact_couplings()) couplings += (couplings.empty() ? "" : ", ") + to_string(c);
  write_file(svg, potential_svg(v, -l, l, {}, "N=" + std::to_string(pot.n()) + " potential, couplings " + couplings));
  out.files = {csv, ext, svg};
  out.notes.push_back("couplings c_m^2 = (" + couplings + ")");
}

void locus_figure(const std::string& name, const RunConfig& cfg, const std::string& dir,
                  FigureOutput& out) {
  const auto& ps = *cfg.path;
  const auto path = make_path(ps);
  const auto points = catastrophe::locus_curve(path, ps.fixed_name, ps.fixed_values, cfg.estimator,
                                               ps.scan_points, ps.tol);
  const auto csv = join_path(dir, name + "_locus.csv");
  const auto svg = join_path(dir, name + ".svg");
  write_file(csv, locus_csv(points));

  std::map<std::string, Series> branches;
  for (const auto& p : points) {
    if (!p.found) continue;
    auto& s = branches[p.branch];
    s.label = p.branch + " branch";
    s.x.push_back(p.fixed_value);
    s.y.push_back(p.critical_value);
  }
  std::vector<Series> series;
  for (auto& [key, s] : branches) series.push_back(std::move(s));
  if (path.kind() == catastrophe::PathKind::k5_alpha_beta) {
    Series diag{"beta = alpha", ps.fixed_values, ps.fixed_values};
    series.push_back(std::move(diag));
  }
  write_file(svg, curves_svg(series, "critical " + ps.swept + " along " + catastrophe::to_string(path.kind()),
                             ps.fixed_name, ps.swept + " (critical)"));
  out.files = {csv, svg};
  int found = 0;
  for (const auto& p : points) found += p.found ? 1 : 0;
  out.notes.push_back(std::to_string(found) + " roots over " + std::to_string(ps.fixed_values.size()) +
                      " values of " + ps.fixed_name);
}

void spectrum_figure(const std::string& name, const RunConfig& cfg, const std::string& dir,
                     FigureOutput& out) {
  const auto pot = make_potential(*cfg.potential);
  const auto grid = cfg.grid ? *cfg.grid : spectral::auto_grid(pot, cfg.states);
  spectral::SolveOptions options;
  options.gap_factor = cfg.gap_factor;
  const auto result = spectral::solve(pot, grid, cfg.states, options);
  const auto csv = join_path(dir, name + "_spectrum.csv");
  const auto svg = join_path(dir, name + ".svg");
  write_file(csv, spectrum_csv(result));
  const double l = plot_half_width(pot);
  write_file(svg, potential_svg([&pot](double x) { return pot.evaluate(x); }, -l, l, result.energies,
                                "lowest levels, lambda_sq = " + format_number(pot.lambda_sq())));
  out.files = {csv, svg};
  for (std::size_t k = 0; k < result.energies.size(); ++k) {
    std::string weights;
    for (double w : result.localization[k]) weights += " " + format_number(std::round(w * 1e4) / 1e4);
    out.notes.push_back("E_" + std::to_string(k) + " = " + format_number(result.energies[k]) + " " +
                        spectral::to_string(result.parities[k]) + ", weights" + weights);
  }
}

}  // namespace

std::vector<std::string> figure_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : configs()) out.push_back(name);
  return out;
}

std::string figure_config(const std::string& name) {
  auto it = configs().find(name);
  if (it == configs().end()) throw DomainError("unknown figure '" + name + "' (fig1 .. fig6)");
  return it->second + "\n";
}

double plot_half_width(const ArnoldPotential& pot) {
  const auto shells = stationary_shells(pot);
  return 1.15 * std::sqrt(std::max(shells.back(), 1e-6));
}

FigureOutput reproduce(const std::string& name, const std::string& out_dir) {
  const RunConfig cfg = parse_config(figure_config(name));
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create directory '" + out_dir + "': " + ec.message());
  FigureOutput out;
  if (cfg.path) {
    locus_figure(name, cfg, out_dir, out);
  } else if (cfg.grid) {
    spectrum_figure(name, cfg, out_dir, out);
  } else {
    curve_figure(name, cfg, out_dir, out);
  }
  return out;
}

}  // namespace arnold::io
