#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arnold/catastrophe.hpp"
#include "arnold/potential.hpp"
#include "arnold/spectral.hpp"

namespace arnold::io {

/// All schema violations of one document, reported together.
class ConfigError : public DomainError {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

enum class PotentialForm { params, params_sq, couplings, arnold_couplings };

/// Numbers are kept exact: JSON integers, decimal literals (at their
/// shortest round-trip decimal value) and "p/q" strings all become rationals.
struct PotentialSpec {
  PotentialForm form = PotentialForm::params;
  std::vector<Rational> values;
  std::optional<std::vector<std::int64_t>> weights;
  Rational lambda_sq = 1;
};

struct PathSpec {
  catastrophe::PathKind kind = catastrophe::PathKind::k5_alpha_beta;
  std::map<std::string, double> fixed;
  std::string swept;
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;  // scan spacing; 0 = unset
  std::string fixed_name;
  std::vector<double> fixed_values;
  int scan_points = 200;
  double tol = 1e-8;
};

struct OutputSpec {
  std::string csv;
  std::string svg;
  std::string psi;
};

struct RunConfig {
  int schema = 1;
  std::optional<PotentialSpec> potential;
  std::optional<spectral::GridSpec> grid;
  int states = 6;
  int n_max = 3;
  double gap_factor = 0.1;
  catastrophe::Estimator estimator = catastrophe::Estimator::harmonic;
  std::optional<PathSpec> path;
  OutputSpec outputs;
  std::uint64_t seed = 0;  // reserved; no operation is stochastic
};

/// Strict parse: unknown keys, wrong types and conflicting potential forms
/// are all collected into one ConfigError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

ArnoldPotential make_potential(const PotentialSpec& spec);
/// Shift parameters of `spec` (inverting couplings when needed).
ShiftParameters make_shift(const PotentialSpec& spec);
catastrophe::FamilyPath make_path(const PathSpec& spec);

/// "lo:hi:step" or "lo:hi" into numbers; throws DomainError when malformed.
struct RangeSpec {
  double lo = 0.0;
  double hi = 0.0;
  std::optional<double> step;
};
RangeSpec parse_range(std::string_view text);

/// {"N", "params", "weights", "couplings", "lambda_sq"}.
std::string potential_to_json(const ArnoldPotential& pot, const ShiftParameters& shift);
/// Reads the serialized form; couplings are optional and, when present,
/// must agree with the ones derived from params.
ArnoldPotential potential_from_json(std::string_view text);

}  // namespace arnold::io
