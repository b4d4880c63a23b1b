#include "arnold/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "arnold/diophantine.hpp"
#include "json.hpp"

namespace arnold::io {
namespace {

using json = nlohmann::json;

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

// Shortest decimal that reads back as the same double.
std::string shortest_decimal(double value) {
  char buf[64];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

class Reader {
 public:
  std::vector<std::string> violations;

  void fail(const std::string& where, const std::string& what) { violations.push_back(where + ": " + what); }

  void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
      if (!allowed.count(key)) fail(where.empty() ? key : where + "." + key, "unknown key");
    }
  }

  bool is_object(const json& j, const std::string& where) {
    if (j.is_object()) return true;
    fail(where, "expected an object");
    return false;
  }

  std::optional<Rational> rational(const json& j, const std::string& where) {
    try {
      if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
      if (j.is_number_unsigned()) return Rational(BigInt(j.get<std::uint64_t>()));
      if (j.is_number_float()) return parse_rational(shortest_decimal(j.get<double>()));
      if (j.is_string()) return parse_rational(j.get<std::string>());
    } catch (const DomainError& e) {
      fail(where, e.what());
      return std::nullopt;
    }
    fail(where, "expected a number or a rational string such as \"61/25\"");
    return std::nullopt;
  }

  std::optional<double> number(const json& j, const std::string& where) {
    auto r = rational(j, where);
    if (!r) return std::nullopt;
    return to_double(*r);
  }

  std::optional<int> integer(const json& j, const std::string& where) {
    if (j.is_number_integer() || j.is_number_unsigned()) {
      const auto v = j.get<std::int64_t>();
      if (v >= INT32_MIN && v <= INT32_MAX) return static_cast<int>(v);
    }
    fail(where, "expected an integer");
    return std::nullopt;
  }

  std::optional<std::string> string(const json& j, const std::string& where) {
    if (j.is_string()) return j.get<std::string>();
    fail(where, "expected a string");
    return std::nullopt;
  }

  std::optional<std::vector<Rational>> rational_list(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) {
      fail(where, "expected a non-empty array");
      return std::nullopt;
    }
    std::vector<Rational> out;
    bool ok = true;
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto r = rational(j[i], where + "[" + std::to_string(i) + "]");
      if (r) {
        out.push_back(*r);
      } else {
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return out;
  }

  // Array of numbers or "lo:hi:step" text.
  std::optional<std::vector<double>> values(const json& j, const std::string& where) {
    if (j.is_string()) {
      try {
        const auto r = parse_range(j.get<std::string>());
        if (!r.step) {
          fail(where, "range text needs a step (lo:hi:step)");
          return std::nullopt;
        }
        return catastrophe::range(r.lo, r.hi, *r.step);
      } catch (const DomainError& e) {
        fail(where, e.what());
        return std::nullopt;
      }
    }
    auto list = rational_list(j, where);
    if (!list) return std::nullopt;
    std::vector<double> out;
    for (const auto& r : *list) out.push_back(to_double(r));
    return out;
  }

  void writable(const std::string& path, const std::string& where) {
    namespace fs = std::filesystem;
    if (path.empty()) {
      fail(where, "empty path");
      return;
    }
    const auto parent = fs::path(path).parent_path();
    std::error_code ec;
    if (!parent.empty() && !fs::is_directory(parent, ec)) {
      fail(where, "directory '" + parent.string() + "' does not exist");
    }
  }
};

std::optional<PotentialSpec> read_potential(Reader& r, const json& j) {
  if (!r.is_object(j, "potential")) return std::nullopt;
  r.check_keys(j, "potential",
               {"N", "params", "params_sq", "couplings", "arnold_couplings", "weights", "lambda_sq"});
  static const std::vector<std::pair<std::string, PotentialForm>> forms = {
      {"params", PotentialForm::params},
      {"params_sq", PotentialForm::params_sq},
      {"couplings", PotentialForm::couplings},
      {"arnold_couplings", PotentialForm::arnold_couplings},
  };
  std::vector<std::string> present;
  PotentialSpec spec;
  for (const auto& [key, form] : forms) {
    if (j.contains(key)) {
      present.push_back(key);
      spec.form = form;
    }
  }
  if (present.empty()) {
    r.fail("potential", "give exactly one of params, params_sq, couplings, arnold_couplings");
    return std::nullopt;
  }
  if (present.size() > 1) {
    r.fail("potential", "conflicting forms " + join(present, " and ") + "; give exactly one");
    return std::nullopt;
  }
  const std::string key = present.front();
  auto values = r.rational_list(j[key], "potential." + key);
  if (!values) return std::nullopt;
  spec.values = *values;

  const int n = spec.form == PotentialForm::arnold_couplings ? static_cast<int>(spec.values.size() / 2)
                                                             : static_cast<int>(spec.values.size());
  if (spec.form == PotentialForm::arnold_couplings && spec.values.size() % 2 != 0) {
    r.fail("potential.arnold_couplings", "expected 2N entries c_1..c_2N");
  }
  if (n < 1 || n > diophantine::kMaxVariables) r.fail("potential." + key, "N must lie in 1..10");
  if (j.contains("N")) {
    auto declared = r.integer(j["N"], "potential.N");
    if (declared && *declared != n) {
      r.fail("potential.N", "N=" + std::to_string(*declared) + " but " + key + " implies N=" + std::to_string(n));
    }
  }
  if (spec.form == PotentialForm::params || spec.form == PotentialForm::params_sq) {
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
      if (spec.values[i] < 0) r.fail("potential." + key + "[" + std::to_string(i) + "]", "must be >= 0");
    }
  }
  if (j.contains("weights")) {
    const auto& w = j["weights"];
    if (!w.is_array()) {
      r.fail("potential.weights", "expected an array of positive integers");
    } else {
      std::vector<std::int64_t> weights;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (!w[i].is_number_integer() || w[i].get<std::int64_t>() <= 0) {
          r.fail("potential.weights[" + std::to_string(i) + "]", "expected a positive integer");
        } else {
          weights.push_back(w[i].get<std::int64_t>());
        }
      }
      if (static_cast<int>(w.size()) != n - 1) {
        r.fail("potential.weights", "expected " + std::to_string(n - 1) + " weights for N=" + std::to_string(n));
      }
      spec.weights = weights;
    }
  }
  if (j.contains("lambda_sq")) {
    auto l = r.rational(j["lambda_sq"], "potential.lambda_sq");
    if (l) {
      if (*l <= 0) r.fail("potential.lambda_sq", "must be positive");
      spec.lambda_sq = *l;
    }
  }
  return spec;
}

std::optional<spectral::GridSpec> read_grid(Reader& r, const json& j) {
  if (!r.is_object(j, "grid")) return std::nullopt;
  r.check_keys(j, "grid", {"half_width", "points", "offset"});
  spectral::GridSpec g;
  if (!j.contains("half_width")) r.fail("grid.half_width", "required");
  if (!j.contains("points")) r.fail("grid.points", "required");
  if (j.contains("half_width")) {
    if (auto v = r.number(j["half_width"], "grid.half_width")) {
      if (!(*v > 0.0)) r.fail("grid.half_width", "must be positive");
      g.half_width = *v;
    }
  }
  if (j.contains("points")) {
    if (auto v = r.integer(j["points"], "grid.points")) {
      if (*v < 64) r.fail("grid.points", "must be at least 64");
      g.points = *v;
    }
  }
  if (j.contains("offset")) {
    if (auto v = r.number(j["offset"], "grid.offset")) g.offset = *v;
  }
  return g;
}

std::optional<PathSpec> read_path(Reader& r, const json& j) {
  if (!r.is_object(j, "path")) return std::nullopt;
  r.check_keys(j, "path", {"kind", "fixed", "swept", "range", "fixed_values", "scan_points", "tol"});
  PathSpec p;
  bool ok = true;
  if (!j.contains("kind")) {
    r.fail("path.kind", "required");
    ok = false;
  } else if (auto k = r.string(j["kind"], "path.kind")) {
    try {
      p.kind = catastrophe::parse_path_kind(*k);
    } catch (const DomainError& e) {
      r.fail("path.kind", e.what());
      ok = false;
    }
  } else {
    ok = false;
  }
  if (!j.contains("swept")) {
    r.fail("path.swept", "required");
    ok = false;
  } else if (auto s = r.string(j["swept"], "path.swept")) {
    p.swept = *s;
  }
  if (!j.contains("fixed") || !j["fixed"].is_object()) {
    r.fail("path.fixed", "required object of fixed parameters");
    ok = false;
  } else {
    for (const auto& [key, value] : j["fixed"].items()) {
      if (auto v = r.number(value, "path.fixed." + key)) p.fixed[key] = *v;
    }
  }
  if (!j.contains("range")) {
    r.fail("path.range", "required (\"lo:hi[:step]\" or [lo, hi])");
    ok = false;
  } else if (j["range"].is_string()) {
    try {
      const auto rs = parse_range(j["range"].get<std::string>());
      p.lo = rs.lo;
      p.hi = rs.hi;
      p.step = rs.step.value_or(0.0);
    } catch (const DomainError& e) {
      r.fail("path.range", e.what());
      ok = false;
    }
  } else if (auto v = r.values(j["range"], "path.range")) {
    if (v->size() != 2) {
      r.fail("path.range", "expected [lo, hi]");
      ok = false;
    } else {
      p.lo = (*v)[0];
      p.hi = (*v)[1];
    }
  }
  if (j.contains("fixed_values")) {
    if (auto v = r.values(j["fixed_values"], "path.fixed_values")) p.fixed_values = *v;
    std::vector<std::string> names;
    for (const auto& [key, value] : p.fixed) {
      if (key != "lambda_sq") names.push_back(key);
    }
    if (names.size() == 1) {
      p.fixed_name = names.front();
    } else {
      r.fail("path.fixed_values", "needs exactly one fixed parameter besides lambda_sq");
    }
  }
  if (j.contains("scan_points")) {
    if (auto v = r.integer(j["scan_points"], "path.scan_points")) {
      if (*v < 2) r.fail("path.scan_points", "must be at least 2");
      p.scan_points = *v;
    }
  }
  if (j.contains("tol")) {
    if (auto v = r.number(j["tol"], "path.tol")) {
      if (!(*v > 0.0)) r.fail("path.tol", "must be positive");
      p.tol = *v;
    }
  }
  if (ok) {
    try {
      make_path(p);
    } catch (const DomainError& e) {
      r.fail("path", e.what());
    }
  }
  return p;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : DomainError("invalid configuration:\n  " + join(violations, "\n  ")),
      violations_(std::move(violations)) {}

RangeSpec parse_range(std::string_view text) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  if (parts.size() < 2 || parts.size() > 3) {
    throw DomainError("range '" + std::string(text) + "' must look like lo:hi or lo:hi:step");
  }
  RangeSpec out;
  out.lo = to_double(parse_rational(parts[0]));
  out.hi = to_double(parse_rational(parts[1]));
  if (parts.size() == 3) {
    out.step = to_double(parse_rational(parts[2]));
    if (!(*out.step > 0.0)) throw DomainError("range step must be positive");
  }
  if (!(out.hi >= out.lo)) throw DomainError("range '" + std::string(text) + "' has hi < lo");
  return out;
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("not valid JSON: ") + e.what()});
  }
  Reader r;
  RunConfig cfg;
  if (!doc.is_object()) throw ConfigError({"top level: expected a JSON object"});
  r.check_keys(doc, "", {"schema", "potential", "grid", "states", "n_max", "gap_factor", "estimator",
                         "path", "outputs", "seed"});
  if (!doc.contains("schema")) {
    r.fail("schema", "required (1)");
  } else if (auto s = r.integer(doc["schema"], "schema")) {
    if (*s != 1) r.fail("schema", "unsupported schema version " + std::to_string(*s));
    cfg.schema = *s;
  }
  if (doc.contains("potential")) cfg.potential = read_potential(r, doc["potential"]);
  if (doc.contains("grid")) cfg.grid = read_grid(r, doc["grid"]);
  if (doc.contains("path")) cfg.path = read_path(r, doc["path"]);
  if (!doc.contains("potential") && !doc.contains("path")) r.fail("potential", "a potential or a path is required");
  if (doc.contains("states")) {
    if (auto v = r.integer(doc["states"], "states")) {
      if (*v < 1) r.fail("states", "must be positive");
      cfg.states = *v;
    }
  }
  if (doc.contains("n_max")) {
    if (auto v = r.integer(doc["n_max"], "n_max")) {
      if (*v < 0) r.fail("n_max", "must be >= 0");
      cfg.n_max = *v;
    }
  }
  if (doc.contains("gap_factor")) {
    if (auto v = r.number(doc["gap_factor"], "gap_factor")) {
      if (!(*v > 0.0)) r.fail("gap_factor", "must be positive");
      cfg.gap_factor = *v;
    }
  }
  if (doc.contains("estimator")) {
    if (auto s = r.string(doc["estimator"], "estimator")) {
      try {
        cfg.estimator = catastrophe::parse_estimator(*s);
      } catch (const DomainError& e) {
        r.fail("estimator", e.what());
      }
    }
  }
  if (doc.contains("outputs")) {
    const auto& o = doc["outputs"];
    if (r.is_object(o, "outputs")) {
      r.check_keys(o, "outputs", {"csv", "svg", "psi"});
      auto read = [&](const char* key, std::string& slot) {
        if (!o.contains(key)) return;
        if (auto s = r.string(o[key], std::string("outputs.") + key)) {
          slot = *s;
          r.writable(slot, std::string("outputs.") + key);
        }
      };
      read("csv", cfg.outputs.csv);
      read("svg", cfg.outputs.svg);
      read("psi", cfg.outputs.psi);
    }
  }
  if (doc.contains("seed")) {
    const auto& s = doc["seed"];
    if (s.is_number_unsigned() || (s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
      cfg.seed = s.get<std::uint64_t>();
    } else {
      r.fail("seed", "expected a nonnegative integer");
    }
  }
  if (!r.violations.empty()) throw ConfigError(std::move(r.violations));
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

ShiftParameters make_shift(const PotentialSpec& spec) {
  switch (spec.form) {
    case PotentialForm::params: {
      std::vector<Rational> squares;
      for (const auto& p : spec.values) squares.push_back(p * p);
      return ShiftParameters::from_squares(std::move(squares), spec.weights);
    }
    case PotentialForm::params_sq:
      return ShiftParameters::from_squares(spec.values, spec.weights);
    case PotentialForm::couplings:
    case PotentialForm::arnold_couplings:
      return couplings_to_shifts(make_potential(spec), spec.weights);
  }
  throw DomainError("unknown potential form");
}

ArnoldPotential make_potential(const PotentialSpec& spec) {
  const double lambda_sq = to_double(spec.lambda_sq);
  switch (spec.form) {
    case PotentialForm::params:
    case PotentialForm::params_sq:
      return build_potential(make_shift(spec), {.lambda_sq = lambda_sq});
    case PotentialForm::couplings:
      return ArnoldPotential(spec.values, lambda_sq);
    case PotentialForm::arnold_couplings:
      return ArnoldPotential::from_arnold_coefficients(spec.values, lambda_sq);
  }
  throw DomainError("unknown potential form");
}

catastrophe::FamilyPath make_path(const PathSpec& spec) {
  return catastrophe::FamilyPath(spec.kind, spec.fixed, spec.swept, spec.lo, spec.hi);
}

std::string potential_to_json(const ArnoldPotential& pot, const ShiftParameters& shift) {
  json j;
  j["N"] = pot.n();
  j["params"] = shift.params();
  j["weights"] = shift.weights();
  if (pot.exact_couplings()) {
    std::vector<std::string> exact;
    for (const auto& c : *pot.exact_couplings()) exact.push_back(to_string(c));
    j["couplings"] = exact;
  } else {
    j["couplings"] = pot.couplings();
  }
  j["lambda_sq"] = pot.lambda_sq();
  return j.dump(2) + "\n";
}

ArnoldPotential potential_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("not valid JSON: ") + e.what()});
  }
  Reader r;
  if (!r.is_object(doc, "potential")) throw ConfigError(std::move(r.violations));
  r.check_keys(doc, "", {"N", "params", "weights", "couplings", "lambda_sq"});
  if (!doc.contains("params")) r.fail("params", "required");
  if (!r.violations.empty()) throw ConfigError(std::move(r.violations));

  json as_config = {{"params", doc["params"]}};
  for (const char* key : {"N", "weights", "lambda_sq"}) {
    if (doc.contains(key)) as_config[key] = doc[key];
  }
  auto spec = read_potential(r, as_config);
  std::optional<std::vector<Rational>> given;
  if (doc.contains("couplings")) given = r.rational_list(doc["couplings"], "couplings");
  if (!r.violations.empty() || !spec) throw ConfigError(std::move(r.violations));

  auto pot = make_potential(*spec);
  if (given) {
    const auto& derived = pot.couplings();
    if (given->size() != derived.size()) throw ConfigError({"couplings: length differs from N"});
    for (std::size_t m = 0; m < derived.size(); ++m) {
      const double g = to_double((*given)[m]);
      if (std::abs(g - derived[m]) > 1e-9 * std::max(1.0, std::abs(derived[m]))) {
        throw ConfigError({"couplings[" + std::to_string(m) + "]: " + shortest_decimal(g) +
                           " disagrees with the value " + shortest_decimal(derived[m]) +
                           " derived from params"});
      }
    }
  }
  return pot;
}

}  // namespace arnold::io
