#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>

#include "arnold/parallel.hpp"

namespace arnold {
namespace {

TEST(Parallel, MapPreservesOrder) {
  const auto out = parallel_map<int>(1000, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], static_cast<int>(i * i));
  EXPECT_GE(thread_budget(), 1u);
}

TEST(Parallel, RethrowsAfterJoin) {
  std::atomic<int> ran{0};
  EXPECT_THROW(parallel_for(64,
                            [&](std::size_t i) {
                              ++ran;
                              if (i == 17) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
  EXPECT_GE(ran.load(), 1);
  parallel_for(0, [](std::size_t) { FAIL(); });
}

}  // namespace
}  // namespace arnold
