#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arnold/potential.hpp"
#include "arnold/spectral.hpp"

// Relocalization loci: sign changes of the gap between the lowest outer-well
// level and the lowest inner/central level along one-parameter families.
namespace arnold::catastrophe {

enum class PathKind {
  k5_mu_ratio,    // N = 2, alpha = r beta; fixed beta, swept r
  k5_alpha_beta,  // N = 2, free (alpha, beta); one fixed, the other swept
  k7_eta,         // N = 3, beta = alpha, gamma = (1 + eta) alpha; fixed alpha, swept eta
  k7_sigma,       // N = 3, beta = gamma = sigma alpha; fixed alpha, swept sigma
};

std::string to_string(PathKind kind);
PathKind parse_path_kind(const std::string& text);

enum class Estimator { harmonic, numeric };

std::string to_string(Estimator estimator);
Estimator parse_estimator(const std::string& text);

class FamilyPath {
 public:
  /// Throws DomainError when `swept` or the keys of `fixed` do not fit the
  /// kind. "lambda_sq" may be given in `fixed` for every kind (default 1).
  FamilyPath(PathKind kind, std::map<std::string, double> fixed, std::string swept, double lo,
             double hi);

  PathKind kind() const noexcept { return kind_; }
  const std::map<std::string, double>& fixed() const noexcept { return fixed_; }
  const std::string& swept() const noexcept { return swept_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double lambda_sq() const;

  FamilyPath with_interval(double lo, double hi) const;
  FamilyPath with_fixed(const std::string& name, double value) const;

  ShiftParameters at(double value) const;

 private:
  PathKind kind_;
  std::map<std::string, double> fixed_;
  std::string swept_;
  double lo_;
  double hi_;
};

struct NumericOptions {
  int n_states = 8;
  /// Unset: spectral::auto_grid per point.
  std::optional<spectral::GridSpec> grid;
};

struct LocusSample {
  double value = 0.0;
  double gap = 0.0;  // outer-class minus inner-class ground candidate
  Estimator estimator = Estimator::harmonic;
  bool bracketed = false;
  double inner_energy = 0.0;
  double outer_energy = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

/// Region indices of the inner class (central well for even N, innermost
/// pair for odd N) and of the outer class (outermost pair).
std::vector<int> inner_regions(int n);
std::vector<int> outer_regions(int n);

LocusSample gap(const FamilyPath& path, double value, Estimator estimator,
                const NumericOptions& numeric = {});

class NoCatastrophe : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Bisection on the path interval to width < tol; throws NoCatastrophe when
/// the gap has the same sign at both ends.
LocusSample critical_root(const FamilyPath& path, Estimator estimator, double tol = 1e-8,
                          const NumericOptions& numeric = {});

struct LocusPoint {
  double fixed_value = 0.0;
  std::string branch;  // "lower" (gap - to +), "upper" (+ to -), "none"
  double critical_value = 0.0;
  double delta_residual = 0.0;
  bool found = false;
};

/// For each fixed value, scans the swept interval at `scan_points` samples,
/// bisects every sign change and labels it by its direction. Fixed values
/// without a root appear once with found = false.
std::vector<LocusPoint> locus_curve(const FamilyPath& path, const std::string& fixed_name,
                                    const std::vector<double>& fixed_values, Estimator estimator,
                                    int scan_points = 200, double tol = 1e-8,
                                    const NumericOptions& numeric = {});

struct ScanSample {
  double value = 0.0;
  double ground_energy = 0.0;
  spectral::Parity ground_parity = spectral::Parity::indeterminate;
  double inner_weight = 0.0;  // ground-state probability in the inner class
  double outer_weight = 0.0;
  std::string dominant;       // "inner", "outer" or "other"
  int lowest_outer_state = -1;  // first state with outer weight > 0.5
};

struct ScanResult {
  std::vector<ScanSample> samples;
  /// Interpolated value where the ground state's inner weight crosses 0.5.
  std::optional<double> flip;
  bool monotone = true;  // no change of the dominant class on the grid
};

/// Generic form: `solve_at` yields the spectrum at a swept value and
/// `inner` / `outer` name the region indices of the two classes.
ScanResult relocalization_scan(const std::function<spectral::SpectralResult(double)>& solve_at,
                               const std::vector<double>& values, const std::vector<int>& inner,
                               const std::vector<int>& outer);

ScanResult relocalization_scan(const FamilyPath& path, const std::vector<double>& values,
                               const NumericOptions& numeric = {});

/// lo, lo + step, ..., up to hi (inclusive within step / 1000).
std::vector<double> range(double lo, double hi, double step);

}  // namespace arnold::catastrophe
