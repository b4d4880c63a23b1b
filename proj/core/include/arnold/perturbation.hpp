#pragma once

#include <vector>

#include "arnold/potential.hpp"

// Leading-order harmonic estimates for deep wells.
namespace arnold::perturbation {

enum class Multiplicity { central, pair };

struct WellModel {
  double x_min = 0.0;
  double depth = 0.0;
  double omega_sq = 0.0;  // Taylor t2 at the minimum
  Multiplicity multiplicity = Multiplicity::central;
  double lambda = 1.0;  // sqrt(lambda_sq)
  int ring_index = 0;
};

/// E_n = depth + (2n+1) Lambda sqrt(omega_sq), n = 0..n_max.
std::vector<double> harmonic_levels(const WellModel& well, int n_max);

/// One model per minimum with x >= 0, innermost first.
std::vector<WellModel> well_models(const ArnoldPotential& pot);
std::vector<WellModel> well_models(const ShiftParameters& shift, double lambda_sq = 1.0);

/// Cubic term of the outer k = 5 wells in rescaled units.
struct PerturbationCoupling {
  double rho = 0.0;           // rho^4 = 1 / (12 R^2 beta^2)
  double lambda_cubic = 0.0;  // 4 R rho^5 (2 R^2 + 3 beta^2)
  double lower = 0.0;         // 7 rho / (3R)
  double upper = 0.0;         // 9 rho / (3R)
  bool hypothesis = false;    // alpha^2 < beta^2
  bool within_bounds = false;
};

PerturbationCoupling cubic_coupling(const ShiftParameters& shift);

/// Outer-minus-inner level gap on beta = gamma = sigma alpha (N = 3):
/// 12 (2n+1) alpha^3 sigma^2 (sqrt(1 + 6 sigma^2) - 1).
double doublet_gap_formula(double alpha, double sigma, int n);
/// Same, reading sigma off N = 3 parameters; rejects beta != gamma.
double doublet_gap_formula(const ShiftParameters& shift, int n);

/// (Omega - omega)(2n+1) with both curvatures taken from exact Taylor shifts.
double doublet_gap_curvature(double alpha, double sigma, int n);

struct GroundEstimates {
  double central = 0.0;
  double outer = 0.0;
};

/// k = 5 ground candidates: sqrt(3) alpha R and (alpha^2 - beta^2) R^4 + 2 sqrt(3) beta R,
/// R^2 = alpha^2 + 2 beta^2 (times Lambda on the zero-point terms).
GroundEstimates ground_energy_estimates_k5(const ShiftParameters& shift, double lambda_sq = 1.0);

}  // namespace arnold::perturbation
