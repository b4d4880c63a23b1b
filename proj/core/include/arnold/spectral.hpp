#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "arnold/potential.hpp"

namespace arnold::spectral {

/// Uniform Dirichlet grid x_i = offset - L + i h, i = 1..M, h = 2L/(M+1).
/// With offset 0 and odd M the grid is symmetric and x = 0 is a node.
struct GridSpec {
  double half_width = 0.0;
  int points = 0;
  /// Unset: taken from the potential (1 for plain functions).
  std::optional<double> lambda_sq;
  double offset = 0.0;

  double step() const { return 2.0 * half_width / (points + 1); }
  double node(int i) const { return offset - half_width + (i + 1) * step(); }
  bool symmetric() const { return offset == 0.0 && points % 2 == 1; }
  void validate() const;
  /// Same interval with M -> 2M + 1 (h halved).
  GridSpec refined() const;
};

enum class Parity { even, odd, indeterminate };

std::string to_string(Parity parity);

struct Region {
  double lo = 0.0;
  double hi = 0.0;
};

struct Splitting {
  int lower = 0;  // index of the lower member
  int upper = 0;
  double splitting = 0.0;  // E_odd - E_even
};

struct SpectralResult {
  GridSpec grid;
  double lambda_sq = 1.0;
  std::vector<double> x;
  std::vector<double> energies;
  /// wavefunctions[n][i]: psi_n(x_i), h * sum psi^2 = 1
  std::vector<std::vector<double>> wavefunctions;
  std::vector<Parity> parities;
  std::vector<int> node_counts;
  std::vector<Region> regions;
  std::vector<std::vector<double>> localization;
  std::vector<Splitting> splittings;
};

struct SolveOptions {
  /// Partition of [offset-L, offset+L]; empty means one region per well
  /// (cuts at the barrier maxima) for potentials, the whole box otherwise.
  std::vector<Region> regions;
  double parity_tol = 1e-6;
  double gap_factor = 0.1;
  bool check_boundary = true;
  std::uint32_t seed = 5489u;
};

SpectralResult solve(const std::function<double(double)>& potential, const GridSpec& grid,
                     int n_states, const SolveOptions& options = {});
SpectralResult solve(const ArnoldPotential& pot, const GridSpec& grid, int n_states,
                     SolveOptions options = {});

/// even / odd when psi(x) -+ psi(-x) vanishes to tol * max|psi|.
std::vector<Parity> classify_parity(const SpectralResult& result, double tol = 1e-6);

/// Probability in each region from the piecewise-linear density; rows sum to 1.
std::vector<std::vector<double>> localization_weights(const SpectralResult& result,
                                                      const std::vector<Region>& regions);

/// Regions cut at the positions of the barrier maxima of the potential.
std::vector<Region> well_regions(const ArnoldPotential& pot, const GridSpec& grid);

/// Adjacent pairs whose gap is below gap_factor times the spacing to the
/// neighbouring levels; pairs are taken greedily from the bottom.
std::vector<Splitting> doublet_splittings(const SpectralResult& result, double gap_factor = 0.1);

/// Sign changes of psi_n, ignoring samples below 1e-6 max|psi_n|.
int count_nodes(const std::vector<double>& psi);

struct ConvergenceStudy {
  std::vector<double> steps;                     // h per level
  std::vector<int> points;                       // M per level
  std::vector<std::vector<double>> energies;     // [level][state]
  std::vector<std::vector<double>> ratios;       // [level - 2][state]
  std::vector<double> extrapolated;              // per state
  std::vector<std::string> warnings;
};

/// Solves on `refinements + 1` grids, halving h each time, and extrapolates
/// E(h) + (E(h) - E(2h)) / 3 from the two finest levels.
ConvergenceStudy convergence_study(const std::function<double(double)>& potential,
                                   const GridSpec& grid, int refinements, int n_states = 1);
ConvergenceStudy convergence_study(const ArnoldPotential& pot, const GridSpec& grid,
                                   int refinements, int n_states = 1);

/// Box and resolution heuristic: V(+-L) clears the estimated top level by
/// 10 Lambda sqrt(t2) of the outer well, and h resolves the narrowest well.
GridSpec auto_grid(const ArnoldPotential& pot, int n_states);

}  // namespace arnold::spectral
