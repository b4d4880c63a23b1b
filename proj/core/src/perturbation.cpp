#include "arnold/perturbation.hpp"

#include <cmath>

#include "arnold/diophantine.hpp"

namespace arnold::perturbation {

std::vector<double> harmonic_levels(const WellModel& well, int n_max) {
  if (!(well.omega_sq > 0.0)) throw DomainError("not a well: curvature must be positive");
  if (n_max < 0) throw DomainError("n_max must be >= 0");
  const double quantum = well.lambda * std::sqrt(well.omega_sq);
  std::vector<double> out;
  for (int n = 0; n <= n_max; ++n) out.push_back(well.depth + (2.0 * n + 1.0) * quantum);
  return out;
}

std::vector<WellModel> well_models(const ArnoldPotential& pot) {
  std::vector<WellModel> out;
  const double lambda = std::sqrt(pot.lambda_sq());
  for (const auto& e : extrema(pot)) {
    if (e.kind != ExtremumKind::minimum || e.position < 0.0) continue;
    WellModel w;
    w.x_min = e.position;
    w.depth = e.value;
    w.omega_sq = taylor_at(pot, e.position)[2];
    w.multiplicity = e.position == 0.0 ? Multiplicity::central : Multiplicity::pair;
    w.lambda = lambda;
    w.ring_index = e.ring_index;
    out.push_back(w);
  }
  return out;
}

std::vector<WellModel> well_models(const ShiftParameters& shift, double lambda_sq) {
  const auto pot = build_potential(shift, {.lambda_sq = lambda_sq});
  std::vector<WellModel> out;
  const double lambda = std::sqrt(lambda_sq);
  for (const auto& e : extrema(shift)) {
    if (e.kind != ExtremumKind::minimum || e.position < 0.0) continue;
    WellModel w;
    w.x_min = e.position;
    w.depth = e.value;
    w.omega_sq = taylor_at(pot, e.position)[2];
    w.multiplicity = e.position == 0.0 ? Multiplicity::central : Multiplicity::pair;
    w.lambda = lambda;
    w.ring_index = e.ring_index;
    out.push_back(w);
  }
  return out;
}

PerturbationCoupling cubic_coupling(const ShiftParameters& shift) {
  if (shift.n() != 2) throw DomainError("cubic coupling is defined for N = 2");
  if (shift.weights() != *diophantine::published_weights(2)) throw DomainError("cubic coupling assumes weight 2");
  const auto u = shift.squares();
  const double a2 = u[0];
  const double b2 = u[1];
  if (!(b2 > 0.0)) throw DomainError("cubic coupling needs beta > 0");
  const double r2 = a2 + 2.0 * b2;
  const double r = std::sqrt(r2);
  PerturbationCoupling out;
  out.rho = std::pow(12.0 * r2 * b2, -0.25);
  out.lambda_cubic = 4.0 * r * std::pow(out.rho, 5) * (2.0 * r2 + 3.0 * b2);
  out.lower = 7.0 * out.rho / (3.0 * r);
  out.upper = 9.0 * out.rho / (3.0 * r);
  out.hypothesis = a2 < b2;
  out.within_bounds = out.lower < out.lambda_cubic && out.lambda_cubic < out.upper;
  return out;
}

double doublet_gap_formula(double alpha, double sigma, int n) {
  if (!(alpha > 0.0) || !(sigma > 0.0)) throw DomainError("alpha and sigma must be positive");
  if (n < 0) throw DomainError("level index must be >= 0");
  const double s2 = sigma * sigma;
  // sqrt(1 + 6 s2) - 1 without cancellation
  const double root_gap = 6.0 * s2 / (std::sqrt(1.0 + 6.0 * s2) + 1.0);
  return 12.0 * (2.0 * n + 1.0) * alpha * alpha * alpha * s2 * root_gap;
}

double doublet_gap_formula(const ShiftParameters& shift, int n) {
  if (shift.n() != 3) throw DomainError("doublet gap formula needs N = 3");
  if (shift.weights() != *diophantine::published_weights(3)) {
    throw DomainError("doublet gap formula assumes weights (3,3)");
  }
  const auto& p = shift.params();
  if (std::abs(p[1] - p[2]) > 1e-12 * std::max(p[1], p[2])) {
    throw DomainError("doublet gap formula holds on beta = gamma only");
  }
  return doublet_gap_formula(p[0], p[1] / p[0], n);
}

double doublet_gap_curvature(double alpha, double sigma, int n) {
  if (!(alpha > 0.0) || !(sigma > 0.0)) throw DomainError("alpha and sigma must be positive");
  const Rational a = exact_rational(alpha);
  const Rational b = a * exact_rational(sigma);
  auto shift = ShiftParameters::from_squares({a * a, b * b, b * b});
  const auto pot = build_potential(shift);
  const Rational r2 = (*shift.exact_shifts())[2];
  const double omega_sq = to_double(taylor_at(pot, a)[2]);
  const double outer_sq = to_double(taylor_at(pot, exact_rational(std::sqrt(to_double(r2))))[2]);
  return (std::sqrt(outer_sq) - std::sqrt(omega_sq)) * (2.0 * n + 1.0);
}

GroundEstimates ground_energy_estimates_k5(const ShiftParameters& shift, double lambda_sq) {
  if (shift.n() != 2) throw DomainError("k = 5 estimates need N = 2");
  if (shift.weights() != *diophantine::published_weights(2)) throw DomainError("k = 5 estimates assume weight 2");
  const auto u = shift.squares();
  const double a2 = u[0];
  const double b2 = u[1];
  const double r2 = a2 + 2.0 * b2;
  const double lambda = std::sqrt(lambda_sq);
  const double r = std::sqrt(r2);
  GroundEstimates out;
  out.central = lambda * std::sqrt(3.0 * a2) * r;
  out.outer = (a2 - b2) * r2 * r2 + lambda * 2.0 * std::sqrt(3.0 * b2) * r;
  return out;
}

}  // namespace arnold::perturbation
