#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "wlab/errors.hpp"
#include "wlab/rng.hpp"
#include "wlab/series.hpp"
#include "wlab/verify/oracles.hpp"

using namespace wlab;
using big = boost::multiprecision::cpp_bin_float_50;

namespace {

FunctionSpec geo(double a, double b, std::vector<double> phases = {}, GFunction g = GFunction::cosine()) {
  return build_spec(a, GeometricFrequencies{b}, std::move(phases), g);
}

std::vector<double> pseudo_phases(std::uint64_t seed, std::size_t n) {
  const CounterStream s(seed);
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = 4.0 * s.uniform(k) - 2.0;
  return out;
}

}  // namespace

TEST(GFunction, PeriodicityAndBounds) {
  for (const auto& g : {GFunction::cosine(), GFunction::cosine_two_harmonic()}) {
    EXPECT_EQ(g.period, 1.0);
    for (int i = 0; i < 10000; ++i) {
      const double x = -3.0 + 6.0 * i / 9999.0;
      EXPECT_NEAR(g(x), g(x + g.period), 1e-12 * std::max(1.0, std::fabs(g(x))));
      EXPECT_LE(std::fabs(g(x)), g.sup_abs + 1e-12);
    }
    for (int i = 0; i + 1 < 10000; ++i) {
      const double x = i / 9999.0, y = (i + 1) / 9999.0;
      EXPECT_LE(std::fabs(g(x) - g(y)), g.lipschitz * std::fabs(x - y) * (1 + 1e-9));
    }
  }
  EXPECT_NEAR(GFunction::cosine().lipschitz, 2.0 * std::numbers::pi, 1e-6);
  EXPECT_NEAR(GFunction::cosine().sup_abs, 1.0, 1e-12);
  EXPECT_NEAR(GFunction::cosine_two_harmonic().sup_abs, 1.5, 1e-9);
  EXPECT_THROW(GFunction::from_name("sin"), ConfigError);
  EXPECT_EQ(GFunction::from_name("cos2").name(), "cos2");
}

TEST(BuildSpec, FigureParameters) {
  const auto spec = geo(0.8, 2.0);
  EXPECT_TRUE(spec.flags().ab_gt1);
  EXPECT_TRUE(spec.flags().a2b_gt1);
  EXPECT_TRUE(spec.flags().b_integer_theta_zero);
  EXPECT_TRUE(spec.warnings().empty());
}

TEST(BuildSpec, BoundaryWarnsAndDomainErrors) {
  const auto spec = geo(0.5, 2.0);
  EXPECT_FALSE(spec.flags().ab_gt1);
  EXPECT_EQ(spec.warnings().size(), 1u);
  EXPECT_THROW(geo(1.2, 2.0), ConfigError);
  EXPECT_THROW(geo(0.0, 2.0), ConfigError);
  EXPECT_THROW(geo(0.5, 1.0), ConfigError);
  EXPECT_THROW(build_spec(0.5, ExplicitFrequencies{{2.0, 4.0}, 2.0}, {}, GFunction::cosine()), ConfigError);
  EXPECT_THROW(build_spec(0.5, ExplicitFrequencies{{1.0, 3.0, 4.0}, 2.0}, {}, GFunction::cosine()), ConfigError);
  const auto ok = build_spec(0.6, ExplicitFrequencies{{1.0, 3.0, 7.0, 15.0}, std::nullopt}, {}, GFunction::cosine());
  EXPECT_NEAR(ok.b(), 15.0 / 7.0, 1e-15);
  EXPECT_EQ(ok.max_terms(), 4u);
}

TEST(BuildSpec, FlagsFollowParameters) {
  EXPECT_FALSE(geo(0.6, 2.0, {0.25}).flags().b_integer_theta_zero);
  EXPECT_FALSE(geo(0.6, 2.5).flags().b_integer_theta_zero);
  EXPECT_TRUE(geo(0.6, 2.0).flags().ab_gt1);
  EXPECT_FALSE(geo(0.6, 2.0).flags().a2b_gt1);
}

TEST(DrawCoefficients, SupportAndDeterminism) {
  const auto spec = geo(0.5, 2.0);
  const auto d1 = draw_coefficients(spec, 11, 5);
  const auto d2 = draw_coefficients(spec, 11, 5);
  EXPECT_EQ(d1.values, d2.values);
  for (std::size_t n = 0; n < 5; ++n) EXPECT_LE(std::fabs(d1.values[n]), std::pow(0.5, n));
  // Prefixes are reproducible on their own.
  const auto longer = draw_coefficients(spec, 11, 40);
  for (std::size_t n = 0; n < 5; ++n) EXPECT_EQ(longer.values[n], d1.values[n]);
  EXPECT_THROW(draw_coefficients(spec, 1, 0), ConfigError);
}

TEST(DrawCoefficients, LeadingValueMeanZero) {
  const double a = 0.7;
  const auto spec = geo(a, 2.0);
  constexpr int n = 100000;
  double sum = 0.0;
  for (int s = 0; s < n; ++s) sum += draw_coefficients(spec, derive_seed(123, static_cast<std::uint64_t>(s)), 1).values[0];
  // values[0] ~ uniform(-1, 1): mean 0, sd 1/sqrt(3)
  EXPECT_NEAR(sum / n, 0.0, 3.0 * (1.0 / std::sqrt(3.0)) / std::sqrt(n));
}

TEST(TruncationOrder, Examples) {
  // 2 * 0.8^{n+1} / 0.2 <= 1e-6 first holds at n = 72.
  EXPECT_EQ(truncation_order(geo(0.8, 2.0), 1e-6), 72u);
  // 4 * 0.5^{n+1} <= 1e-6 first holds at n = 21 (0.5^22 = 2.38e-7 <= 2.5e-7).
  EXPECT_EQ(truncation_order(geo(0.5, 2.0), 1e-6), 21u);
  EXPECT_EQ(truncation_order(geo(0.5, 2.0), 4.0), 0u);
  EXPECT_EQ(truncation_order(geo(0.5, 2.0), 100.0), 0u);
  EXPECT_THROW(truncation_order(geo(0.5, 2.0), 0.0), ConfigError);
}

TEST(TruncationOrder, MinimalityAgainstExactArithmetic) {
  for (const double a : {0.3, 0.5, 0.77, 0.9}) {
    for (const double tol : {1e-3, 1e-6, 1e-9}) {
      const auto spec = geo(a, 3.0);
      const std::size_t n = truncation_order(spec, tol);
      auto bound = [&](std::size_t k) {
        return big(2) * big(spec.g().sup_abs) * pow(big(a), static_cast<int>(k + 1)) / (1 - big(a));
      };
      EXPECT_LE(bound(n), big(tol) * (1 + big(1e-12)));
      if (n > 0) EXPECT_GT(bound(n - 1), big(tol) * (1 - big(1e-12)));
    }
  }
}

TEST(Evaluate, ZeroDrawAndOrigin) {
  const auto spec = geo(0.8, 2.0);
  const auto zero = zero_draw(30);
  for (const double x : {0.0, 0.1, 0.5, 0.999}) EXPECT_EQ(evaluate(spec, zero, x, 30), 0.0);
  const auto d = draw_coefficients(spec, 5, 30);
  double sum = 0.0;
  for (const double v : d.values) sum += v;
  EXPECT_NEAR(evaluate(spec, d, 0.0, 30), sum, 1e-14);
}

TEST(Evaluate, MatchesHighPrecisionOracle) {
  const auto spec = geo(0.8, 2.0);
  const std::size_t order = truncation_order(spec, 1e-12) + 1;
  const auto d = draw_coefficients(spec, 2024, order);
  EXPECT_NEAR(evaluate(spec, d, 0.3, order), verify::evaluate_high_precision(spec, d, 0.3, order), 1e-10);
  // Non-integer ratio, phases and the two-harmonic g.
  const auto spec2 = geo(0.7, 2.7, pseudo_phases(3, 20), GFunction::cosine_two_harmonic());
  const std::size_t order2 = 40;
  const auto d2 = draw_coefficients(spec2, 77, order2);
  const CounterStream xs(9);
  for (std::uint64_t k = 0; k < 200; ++k) {
    const double x = xs.uniform(k);
    ASSERT_NEAR(evaluate(spec2, d2, x, order2), verify::evaluate_high_precision(spec2, d2, x, order2), 1e-10) << x;
  }
}

TEST(Evaluate, Boundedness) {
  for (const double a : {0.5, 0.8, 0.95}) {
    const auto spec = geo(a, 3.0, pseudo_phases(1, 10), GFunction::cosine_two_harmonic());
    const std::size_t order = 60;
    const double bound = spec.g().sup_abs * (1.0 - std::pow(a, order)) / (1.0 - a);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto d = draw_coefficients(spec, s, order);
      for (int i = 0; i <= 200; ++i) ASSERT_LE(std::fabs(evaluate(spec, d, i / 200.0, order)), bound * (1 + 1e-12));
    }
  }
}

TEST(Evaluate, PeriodicityIsBitExactForIntegerB) {
  const auto spec = geo(0.8, 3.0);
  const auto d = draw_coefficients(spec, 8, 70);
  const CounterStream xs(4);
  for (std::uint64_t k = 0; k < 500; ++k) {
    // Multiples of 2^-40 so that x + 1 is exact.
    const double x = std::ldexp(std::floor(std::ldexp(xs.uniform(k), 40)), -40);
    ASSERT_EQ(evaluate(spec, d, x, 70), evaluate(spec, d, x + 1.0, 70)) << x;
  }
}

TEST(Evaluate, TruncationSoundness) {
  // The bound 2 sup a^{min+1} / (1 - a) covers the oscillation of the tail
  // once a >= 1/2.
  const CounterStream rng(31);
  for (std::uint64_t k = 0; k < 60; ++k) {
    const double a = 0.5 + 0.45 * rng.uniform(4 * k);
    const auto spec = geo(a, 2.0 + 2.0 * rng.uniform(4 * k + 1), pseudo_phases(k, 8));
    const auto o1 = static_cast<std::size_t>(1 + 30 * rng.uniform(4 * k + 2));
    const auto o2 = o1 + static_cast<std::size_t>(1 + 30 * rng.uniform(4 * k + 3));
    const auto d = draw_coefficients(spec, k, o2);
    const double bound = 2.0 * spec.g().sup_abs * std::pow(a, static_cast<double>(o1 + 1)) / (1.0 - a);
    for (int i = 0; i <= 50; ++i) {
      const double x = i / 50.0;
      ASSERT_LE(std::fabs(evaluate(spec, d, x, o1) - evaluate(spec, d, x, o2)), bound * (1 + 1e-12));
    }
  }
}

TEST(Evaluate, OrderBeyondDrawIsRejected) {
  const auto spec = geo(0.8, 2.0);
  const auto d = draw_coefficients(spec, 1, 5);
  EXPECT_THROW(evaluate(spec, d, 0.5, 6), PreconditionError);
}

TEST(SampleGraph, Endpoints) {
  const auto spec = geo(0.8, 2.0);
  const double tol = 1e-6;
  const auto d = draw_coefficients(spec, 3, truncation_order(spec, tol) + 1);
  const auto s = sample_graph(spec, d, 2, tol);
  ASSERT_EQ(s.xs.size(), 2u);
  EXPECT_EQ(s.xs[0], 0.0);
  EXPECT_EQ(s.xs[1], 1.0);
  EXPECT_EQ(s.truncation_order, 72u);
  EXPECT_NEAR(s.tail_bound, std::pow(0.8, 73) / 0.2, 1e-15);
  // Periodic closure: b integer and theta = 0.
  EXPECT_NEAR(s.ys[0], s.ys[1], s.tail_bound);
  EXPECT_THROW(sample_graph(spec, d, 1, tol), ConfigError);
  EXPECT_THROW(sample_graph(spec, draw_coefficients(spec, 3, 10), 5, tol), PreconditionError);
}

TEST(SampleGraph, ZeroDrawAndInvariants) {
  const auto spec = geo(0.6, 3.0, {}, GFunction::cosine_two_harmonic());
  const double tol = 1e-8;
  const std::size_t order = truncation_order(spec, tol) + 1;
  const auto zero = sample_graph(spec, zero_draw(order), 100, tol);
  for (const double y : zero.ys) EXPECT_EQ(y, 0.0);
  const auto s = sample_graph(spec, draw_coefficients(spec, 1, order), 1000, tol);
  for (std::size_t i = 1; i < s.xs.size(); ++i) ASSERT_GT(s.xs[i], s.xs[i - 1]);
  for (const double y : s.ys) ASSERT_LE(std::fabs(y), spec.g().sup_abs / (1 - spec.a()) + s.tail_bound);
}

TEST(DimensionFormula, Examples) {
  EXPECT_NEAR(dimension_formula(geo(0.5, 4.0)).value, 1.5, 1e-15);
  // 2 + ln 0.8 / ln 2 and 2 + ln 0.5 / ln 3 in 50-digit arithmetic.
  const double d1 = static_cast<double>(2 + log(big("0.8")) / log(big(2)));
  const double d2 = static_cast<double>(2 + log(big("0.5")) / log(big(3)));
  EXPECT_NEAR(dimension_formula(geo(0.8, 2.0)).value, d1, 1e-14);
  EXPECT_NEAR(dimension_formula(geo(0.5, 3.0)).value, d2, 1e-14);
  EXPECT_NEAR(d1, 1.6781, 1e-4);
  EXPECT_NEAR(d2, 1.3691, 1e-4);
  EXPECT_FALSE(dimension_formula(geo(0.8, 2.0)).warning.has_value());
  EXPECT_TRUE(dimension_formula(geo(0.4, 2.0)).warning.has_value());
}
