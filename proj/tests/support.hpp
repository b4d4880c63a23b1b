#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace arnold::testing {

// Deterministic draws for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed = 0x5eed2026u) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  // log-uniform on [lo, hi], lo > 0
  double scale(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

 private:
  std::mt19937_64 rng_;
};

inline double rel_diff(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace arnold::testing
