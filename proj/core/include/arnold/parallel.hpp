#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace arnold {

/// Worker count: ARNOLD_CAT_THREADS when set and positive, else the
/// hardware concurrency (at least 1).
unsigned thread_budget();

/// Runs body(i) for i in [0, count) on up to thread_budget() threads. The
/// first exception thrown by any call is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Order-preserving map over [0, count).
template <typename T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  parallel_for(count, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace arnold
