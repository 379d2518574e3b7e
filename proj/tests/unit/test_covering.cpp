#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "wlab/covering.hpp"
#include "wlab/errors.hpp"
#include "wlab/rng.hpp"
#include "wlab/verify/oracles.hpp"

using namespace wlab;

namespace {

FunctionSpec figure_spec() { return build_spec(0.8, GeometricFrequencies{2.0}, {}, GFunction::cosine()); }

// Direct evaluation of the center test, then a brute-force dilation.
GridSet near_level_oracle(const GFunction& g, double eps, std::size_t m) {
  GridSet centers(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double x = (i + 0.5) / m, y = (j + 0.5) / m;
      if (std::fabs(g(x) - g(y)) < eps) centers.set(i, j);
    }
  }
  GridSet out(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      bool hit = false;
      for (std::size_t a = (i ? i - 1 : 0); a <= std::min(m - 1, i + 1); ++a) {
        for (std::size_t b = (j ? j - 1 : 0); b <= std::min(m - 1, j + 1); ++b) hit = hit || centers.test(a, b);
      }
      if (hit) out.set(i, j);
    }
  }
  return out;
}

}  // namespace

TEST(NearLevelSet, LargeEpsilonGivesFullSquare) {
  for (const auto& g : {GFunction::cosine(), GFunction::cosine_two_harmonic()}) {
    EXPECT_EQ(near_level_set(g, 2.0 * g.sup_abs, 128).measure(), 1.0);
    EXPECT_EQ(near_level_set(g, 5.0, 33).measure(), 1.0);
  }
}

TEST(NearLevelSet, MonotoneInEpsilon) {
  const GFunction g = GFunction::cosine_two_harmonic();
  double prev = 0.0;
  for (const double eps : {0.001, 0.01, 0.05, 0.1, 0.3, 1.0, 2.0}) {
    const double m = near_level_set(g, eps, 256).measure();
    EXPECT_GE(m, prev);
    prev = m;
  }
}

TEST(NearLevelSet, GenericMatchesDirectOracle) {
  const GFunction g = GFunction::cosine_two_harmonic();
  for (const double eps : {0.02, 0.3}) EXPECT_EQ(near_level_set_generic(g, eps, 128), near_level_oracle(g, eps, 128));
}

TEST(NearLevelSet, CosineFastPathWithinFringe) {
  const GFunction g = GFunction::cosine();
  const std::size_t m = 1024;
  const GridSet fast = near_level_set_cosine(0.05, m);
  const GridSet generic = near_level_set_generic(g, 0.05, m);
  EXPECT_EQ(generic, near_level_oracle(g, 0.05, m));
  EXPECT_TRUE(generic.is_subset_of(fast));
  EXPECT_TRUE(fast.is_subset_of(generic.dilated()));
  EXPECT_EQ(near_level_set(g, 0.05, m), fast);
  // Cell-for-cell agreement apart from the fringe in practice.
  EXPECT_LE((fast ^ generic).measure(), 1e-3);
}

TEST(CoverCount, Examples) {
  EXPECT_EQ(cover_count(GridSet::full(64), 0.25), 16u);
  EXPECT_EQ(cover_count(GridSet::empty(64), 0.25), 0u);
  // Diagonal band |i - j| <= 1 on M = 64: 8 diagonal squares and 7 on each side.
  GridSet band(64);
  for (std::size_t i = 0; i < 64; ++i) {
    for (std::size_t j = 0; j < 64; ++j) {
      if ((i > j ? i - j : j - i) <= 1) band.set(i, j);
    }
  }
  EXPECT_EQ(cover_count(band, 1.0 / 8.0), 22u);
  EXPECT_THROW(cover_count(band, 1.0 / 128.0), PreconditionError);
}

TEST(CoverCount, BoundsTheMeasure) {
  const GridSet a = near_level_set(GFunction::cosine(), 0.1, 256);
  for (const auto& p : cover_profile(a, std::vector<double>{1.0 / 256, 1.0 / 64, 0.1, 0.3, 1.0})) {
    EXPECT_GE(p.cover_measure, a.measure() - 1e-15);
    EXPECT_DOUBLE_EQ(p.count_delta, p.count * p.delta);
  }
}

TEST(IteratedIntersection, TrivialCases) {
  const auto spec = figure_spec();
  const GridSet a = near_level_set(spec.g(), 0.2, 256);
  EXPECT_EQ(iterated_intersection(a, spec, {}, 0), a);
  const GridSet full = GridSet::full(256);
  EXPECT_EQ(iterated_intersection(full, spec, diagonal_phase_pairs(spec, 4), 4), full);
}

TEST(IteratedIntersection, MonotoneChainAndPointwiseDefinition) {
  const auto spec = build_spec(0.7, GeometricFrequencies{3.0}, {0.0, 0.13, 0.71, 0.4}, GFunction::cosine());
  const std::size_t m = 243;
  const GridSet a = near_level_set(spec.g(), 0.3, m);
  const auto phases = diagonal_phase_pairs(spec, 3);
  const auto measures = intersection_measures(a, spec, phases, 3);
  for (std::size_t n = 1; n < measures.size(); ++n) EXPECT_LE(measures[n], measures[n - 1]);
  const GridSet s3 = iterated_intersection(a, spec, phases, 3);
  for (std::size_t i = 0; i < m; i += 7) {
    for (std::size_t j = 0; j < m; j += 5) {
      const double x = (i + 0.5) / m, y = (j + 0.5) / m;
      bool in = a.test(i, j);
      for (std::size_t k = 1; k <= 3; ++k) {
        const double bx = spec.frequency(k).reduce(x) + spec.theta(k), by = spec.frequency(k).reduce(y) + spec.theta(k);
        const auto ci = static_cast<std::size_t>((bx - std::floor(bx)) * m);
        const auto cj = static_cast<std::size_t>((by - std::floor(by)) * m);
        in = in && a.test(std::min(ci, m - 1), std::min(cj, m - 1));
      }
      ASSERT_EQ(s3.test(i, j), in) << i << "," << j;
    }
  }
}

TEST(IteratedIntersection, FigureMeasuresDecrease) {
  const auto spec = figure_spec();
  const GridSet a = near_level_set(spec.g(), 0.05, 2048);
  const auto measures = intersection_measures(a, spec, diagonal_phase_pairs(spec, 6), 6);
  ASSERT_EQ(measures.size(), 7u);
  for (std::size_t n = 1; n < measures.size(); ++n) EXPECT_LT(measures[n], measures[n - 1]);
  // Regression fixtures (cell counts over 2048^2).
  EXPECT_NEAR(measures[0], 0.0651, 5e-4);
  EXPECT_NEAR(measures[6], 0.00125, 5e-5);
  EXPECT_LE(decay_fit(measures).rate, 0.65);
}

TEST(IteratedIntersection, ResolutionRefinement) {
  // The one-cell dilation inflates the measure by O(1/M): each doubling of M
  // roughly halves the change.
  const GFunction g = GFunction::cosine();
  const double m1 = near_level_set(g, 0.05, 1024).measure();
  const double m2 = near_level_set(g, 0.05, 2048).measure();
  const double m3 = near_level_set(g, 0.05, 4096).measure();
  EXPECT_GT(m1, m2);
  EXPECT_GT(m2, m3);
  EXPECT_LT(m2 - m3, 0.6 * (m1 - m2));
  EXPECT_LT((m2 - m3) / m3, 0.05);
}

TEST(GammaBound, IntegerModeIsExact) {
  const auto p = gamma_bound(100, 0.01, 2.0, GammaMode::integer_b);
  EXPECT_EQ(p.gamma, 100 * 0.01 * 0.01);
  EXPECT_NEAR(p.gamma, 0.01, 1e-17);
  EXPECT_EQ(p.k, 1);
  EXPECT_TRUE(p.valid);
  const CounterStream rng(5);
  for (std::uint64_t k = 0; k < 100; ++k) {
    const auto n = static_cast<std::size_t>(1 + 500 * rng.uniform(2 * k));
    const double d = rng.uniform_open(2 * k + 1);
    EXPECT_EQ(gamma_bound(n, d, 3.0, GammaMode::integer_b).gamma, static_cast<double>(n) * d * d);
  }
}

TEST(GammaBound, GeneralExample) {
  using big = boost::multiprecision::cpp_bin_float_50;
  const auto p = gamma_bound(20, 0.05, 2.0, GammaMode::general);
  EXPECT_EQ(p.k, 6);
  const big side = big("0.05") + big(2) / 64;
  const double expected = static_cast<double>(pow(20 * side * side, big(1) / 6));
  EXPECT_NEAR(p.gamma, expected, 1e-12);
  EXPECT_NEAR(p.gamma, 0.7136, 1e-4);
  EXPECT_TRUE(p.valid);
  // k satisfies 2/(delta b^k) < 1 <= 2/(delta b^(k-1)).
  EXPECT_LT(2.0 / (0.05 * std::pow(2.0, p.k)), 1.0);
  EXPECT_GE(2.0 / (0.05 * std::pow(2.0, p.k - 1)), 1.0);
}

TEST(GammaBound, LimitAndFlags) {
  // With N proportional to 1/delta, gamma tends to 1/b, at rate O(1/k).
  for (const double b : {2.0, 3.0, 5.0}) {
    double prev = 1.0;
    for (const double delta : {1e-3, 1e-6, 1e-12}) {
      const auto p = gamma_bound(static_cast<std::size_t>(std::ceil(1.0 / delta)), delta, b, GammaMode::general);
      const double gap = std::fabs(p.gamma - 1.0 / b);
      EXPECT_LT(gap, prev) << b << " " << delta;
      prev = gap;
    }
    EXPECT_LT(prev, 0.15 / b);
  }
  EXPECT_FALSE(gamma_bound(1000, 0.5, 2.0, GammaMode::integer_b).valid);
  EXPECT_THROW(gamma_bound(0, 0.5, 2.0, GammaMode::general), ConfigError);
  EXPECT_THROW(gamma_bound(1, 1.5, 2.0, GammaMode::general), ConfigError);
  EXPECT_THROW(gamma_bound(1, 0.5, 1.0, GammaMode::general), ConfigError);
}

TEST(DecayFit, Examples) {
  const std::vector<double> geometric{1.0, 0.5, 0.25, 0.125};
  const auto f = decay_fit(geometric);
  EXPECT_NEAR(f.rate, 0.5, 1e-12);
  EXPECT_NEAR(f.r2, 1.0, 1e-12);
  EXPECT_NEAR(f.prefactor, 1.0, 1e-12);
  const std::vector<double> flat{0.3, 0.3, 0.3, 0.3};
  EXPECT_NEAR(decay_fit(flat).rate, 1.0, 1e-12);
  const std::vector<double> cut{0.8, 0.4, 0.2, 0.0, 0.1};
  const auto c = decay_fit(cut);
  EXPECT_TRUE(c.truncated);
  EXPECT_EQ(c.points_used, 3u);
  const std::vector<double> short_list{0.8, 0.0, 0.2};
  EXPECT_THROW(decay_fit(short_list), PreconditionError);
}

TEST(BSets, DecompositionProperties) {
  const auto spec = build_spec(0.8, GeometricFrequencies{2.0}, {0.0, 0.3, 0.1, 0.9}, GFunction::cosine_two_harmonic());
  const std::size_t m = 256;
  const auto r = b_sets(spec, 0.1, 6, m);
  ASSERT_EQ(r.first_hit.size(), r.n_max_used + 1);
  GridSet all(m);
  for (std::size_t n = 0; n < r.first_hit.size(); ++n) {
    for (std::size_t k = n + 1; k < r.first_hit.size(); ++k) EXPECT_EQ((r.first_hit[n] & r.first_hit[k]).count(), 0u);
    all |= r.first_hit[n];
  }
  EXPECT_NEAR(all.measure() + r.residuals.back(), 1.0, 1e-15);
  for (std::size_t k = 1; k < r.residuals.size(); ++k) EXPECT_LE(r.residuals[k], r.residuals[k - 1]);
  for (std::size_t k = 1; k < r.partial_sums.size(); ++k) {
    EXPECT_GE(r.partial_sums[k], r.partial_sums[k - 1]);
    EXPECT_NEAR(r.partial_sums[k] - r.partial_sums[k - 1], r.increments[k], 1e-12);
  }
}

TEST(BSets, PairMeasuresMatchCellwiseOracle) {
  const auto spec = build_spec(0.75, GeometricFrequencies{2.0}, {0.0, 0.21, 0.5, 0.77, 0.05}, GFunction::cosine());
  const std::size_t m = 256;
  const auto r = b_sets(spec, 0.08, 5, m);
  const auto counts = verify::pair_counts_bruteforce(spec, 0.08, r.n_max_used, m);
  for (std::size_t n0 = 0; n0 <= r.n_max_used; ++n0) {
    for (std::size_t n1 = 0; n1 <= r.n_max_used; ++n1) {
      EXPECT_EQ(r.pair_measures[n0][n1], static_cast<double>(counts[n0][n1]) / (m * m)) << n0 << "," << n1;
    }
  }
}

TEST(BSets, FigureSeriesConverges) {
  const auto spec = figure_spec();
  const auto r8 = b_sets(spec, 0.05, 8, 2048);
  EXPECT_FALSE(r8.capped);
  for (std::size_t k = 1; k <= 8; ++k) EXPECT_GT(r8.partial_sums[k], r8.partial_sums[k - 1]);
  for (std::size_t k = 5; k <= 8; ++k) EXPECT_LT(r8.increments[k], r8.increments[k - 1]);
  // Residual at n_max = 10 below residual at n_max = 3; 10 exceeds the cap
  // at M = 2048, so use M = 4096.
  const auto r10 = b_sets(spec, 0.05, 10, 4096);
  EXPECT_FALSE(r10.capped);
  EXPECT_LT(r10.residuals[10], r10.residuals[3]);
}

TEST(BSets, CapIsReported) {
  const auto r = b_sets(figure_spec(), 0.05, 12, 256);
  EXPECT_TRUE(r.capped);
  EXPECT_EQ(r.n_max_used, resolution_cap(figure_spec(), 256));
  EXPECT_EQ(resolution_cap(figure_spec(), 256), 6u);
}
