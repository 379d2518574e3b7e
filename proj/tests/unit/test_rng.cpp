#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <thread>
#include <vector>

#include "wlab/parallel.hpp"
#include "wlab/rng.hpp"

using namespace wlab;

TEST(CounterStream, SamePositionSameValue) {
  const CounterStream a(42), b(42);
  for (std::uint64_t k = 0; k < 1000; ++k) EXPECT_EQ(a.bits(k), b.bits(k));
}

TEST(CounterStream, UniformRange) {
  const CounterStream s(7);
  double sum = 0.0;
  constexpr int n = 200000;
  for (int k = 0; k < n; ++k) {
    const double u = s.uniform(k);
    const double v = s.uniform_open(k);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_GT(v, 0.0);
    ASSERT_LT(v, 1.0);
    sum += u;
  }
  // uniform mean 1/2, sd of the mean sqrt(1/12/n)
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(DeriveSeed, LabelsAndIndicesSeparate) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(99, i));
  seen.insert(derive_seed(99, "pairs"));
  seen.insert(derive_seed(99, "coefficients"));
  seen.insert(derive_seed(100, "pairs"));
  EXPECT_EQ(seen.size(), 1003u);
  EXPECT_EQ(derive_seed(5, "x"), derive_seed(5, "x"));
}

TEST(ParallelFor, CoversRangeOnceAtAnyThreadCount) {
  for (const std::size_t threads : {1u, 2u, 5u}) {
    set_thread_count(threads);
    std::vector<int> hits(10007, 0);
    parallel_for(hits.size(), 64, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) ++hits[i];
    });
    for (const int h : hits) ASSERT_EQ(h, 1);
  }
  set_thread_count(0);
}

TEST(ParallelFor, PropagatesExceptions) {
  set_thread_count(3);
  EXPECT_THROW(parallel_for(1000, 10,
                            [](std::size_t lo, std::size_t) {
                              if (lo == 500) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
  set_thread_count(0);
}
