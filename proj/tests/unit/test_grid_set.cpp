#include <gtest/gtest.h>

#include <sstream>

#include "wlab/errors.hpp"
#include "wlab/grid_set.hpp"
#include "wlab/rng.hpp"

using namespace wlab;

namespace {

GridSet random_set(std::size_t m, std::uint64_t seed, double p = 0.3) {
  const CounterStream s(seed);
  GridSet g(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (s.uniform(i * m + j) < p) g.set(i, j);
    }
  }
  return g;
}

}  // namespace

TEST(GridSet, Measures) {
  EXPECT_EQ(GridSet::full(64).measure(), 1.0);
  EXPECT_EQ(GridSet::empty(64).measure(), 0.0);
  GridSet half(70);
  for (std::size_t i = 0; i < 35; ++i) {
    for (std::size_t j = 0; j < 70; ++j) half.set(i, j);
  }
  EXPECT_EQ(half.measure(), 0.5);
}

TEST(GridSet, ComplementIsInvolution) {
  for (const std::size_t m : {1u, 63u, 64u, 65u, 200u}) {
    const GridSet s = random_set(m, m);
    EXPECT_EQ(s.complement().complement(), s);
    EXPECT_EQ(s.count() + s.complement().count(), m * m);
  }
}

TEST(GridSet, BooleanAlgebraMatchesCellwise) {
  const std::size_t m = 97;
  const GridSet a = random_set(m, 1), b = random_set(m, 2, 0.6);
  const GridSet both = a & b, either = a | b, diff = GridSet(a).subtract(b), sym = a ^ b;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      ASSERT_EQ(both.test(i, j), a.test(i, j) && b.test(i, j));
      ASSERT_EQ(either.test(i, j), a.test(i, j) || b.test(i, j));
      ASSERT_EQ(diff.test(i, j), a.test(i, j) && !b.test(i, j));
      ASSERT_EQ(sym.test(i, j), a.test(i, j) != b.test(i, j));
    }
  }
  EXPECT_TRUE(both.is_subset_of(a));
  EXPECT_TRUE(a.is_subset_of(either));
  EXPECT_THROW(a & GridSet(5), ConfigError);
}

TEST(GridSet, DilationIsEightNeighbourhood) {
  const std::size_t m = 66;
  const GridSet s = random_set(m, 9, 0.02);
  const GridSet d = s.dilated();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      bool expect = false;
      for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          const long ii = static_cast<long>(i) + di, jj = static_cast<long>(j) + dj;
          if (ii >= 0 && jj >= 0 && ii < static_cast<long>(m) && jj < static_cast<long>(m)) {
            expect = expect || s.test(static_cast<std::size_t>(ii), static_cast<std::size_t>(jj));
          }
        }
      }
      ASSERT_EQ(d.test(i, j), expect) << i << "," << j;
    }
  }
}

TEST(GridSet, PbmLayout) {
  GridSet s(3);
  s.set(0, 0);  // x in [0,1/3), y in [0,1/3): bottom-left pixel
  std::ostringstream os;
  s.write_pbm(os);
  EXPECT_EQ(os.str(), "P1\n3 3\n000\n000\n100\n");
}
