#pragma once

// Dimension of the graph from both sides: box counting (upper bound) and
// Monte Carlo t-energies of the lifted Lebesgue measure (lower bound).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wlab/series.hpp"

namespace wlab {

/// Minimum sample points per eps-column required by box_count().
inline constexpr double kMinPointsPerColumn = 8.0;

/// Number of half-open eps x eps boxes [c eps, (c+1) eps) x [r eps, (r+1) eps)
/// met by the sampled polyline over the half-open domain [x_0, x_last).
/// Computed column by column from the row range of the polyline inside each
/// column. Rows are anchored at multiples of eps, which is the same as
/// anchoring at ymin rounded down to eps.
/// Throws PreconditionError when a column holds fewer than 8 sample points.
std::size_t box_count(const GraphSample& sample, double eps);

struct DimensionEstimate {
  std::vector<double> scales;
  std::vector<std::size_t> counts;
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  /// NaN when no spec was supplied.
  double predicted_D = 0.0;
};

/// Least-squares slope of log N(eps) against -log eps. Needs at least four
/// scales spanning two octaves.
DimensionEstimate box_dimension_estimate(const GraphSample& sample, std::span<const double> scales);
DimensionEstimate box_dimension_estimate(const FunctionSpec& spec, const GraphSample& sample,
                                         std::span<const double> scales);

/// 2^-k for k = k_lo..k_hi.
std::vector<double> dyadic_scales(int k_lo, int k_hi);
/// 1 / b_n for n = n_lo..n_hi.
std::vector<double> geometric_scales(const FunctionSpec& spec, std::size_t n_lo, std::size_t n_hi);

struct EnergyEstimate {
  double t = 0.0;
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n_pairs = 0;
};

/// Uniform pairs (x, y) on [0,1]^2, x != y, with dx = x - y and df = f(x) - f(y).
struct PairSample {
  std::vector<double> dx;
  std::vector<double> df;
};

/// Pairs are generated in fixed chunks, each from its own substream of
/// `seed`, so the sample does not depend on the worker count.
PairSample sample_pairs(const std::function<double(double)>& f, std::size_t n_pairs, std::uint64_t seed);
PairSample sample_pairs(const FunctionSpec& spec, const CoefficientDraw& draw, std::size_t n_pairs,
                        std::uint64_t seed);

/// Mean of ((x-y)^2 + (f(x)-f(y))^2)^(-t/2) with its standard error. Heavy
/// tails show up in the standard error rather than being trimmed.
EnergyEstimate energy_from_pairs(const PairSample& pairs, double t);

/// log(full mean / median of the four quarter-sample means) / log 4: how fast
/// the running mean grows between n/4 and n pairs.
double energy_growth_exponent(const PairSample& pairs, double t);

EnergyEstimate energy_estimate(const FunctionSpec& spec, const CoefficientDraw& draw, double t,
                               std::size_t n_pairs, std::uint64_t seed);
EnergyEstimate energy_estimate(const std::function<double(double)>& f, double t, std::size_t n_pairs,
                               std::uint64_t seed);

enum class EnergyVerdict { stable, diverging };

std::string to_string(EnergyVerdict v);

/// Median over seeds of the growth exponent above which a t is marked diverging. A
/// sample mean of a tail with index kappa < 1 grows like n^(1/kappa - 1).
inline constexpr double kDivergenceGrowthThreshold = 0.05;

struct EnergyScanRow {
  double t = 0.0;
  /// Seed-averaged estimate; std_error combines the per-seed errors.
  EnergyEstimate estimate;
  std::size_t seeds = 0;
  /// Median of the per-seed growth exponents.
  double growth_exponent = 0.0;
  EnergyVerdict verdict = EnergyVerdict::stable;
};

/// For each seed s: coefficients drawn with derive_seed(s, "coefficients")
/// up to truncation_order(spec, tol), pairs from derive_seed(s, "pairs"). The
/// same pairs serve every t.
std::vector<EnergyScanRow> energy_threshold_scan(const FunctionSpec& spec, std::span<const double> t_grid,
                                                 std::size_t n_pairs, std::span<const std::uint64_t> seeds,
                                                 double tol);

}  // namespace wlab
