#pragma once

// Grid realizations of the covering argument: near-level sets of g, their
// delta-square covers, the iterated scaled intersections and the first/second
// hit decompositions B_n, B_{n0,n1}.

#include <array>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "wlab/grid_set.hpp"
#include "wlab/series.hpp"

namespace wlab {

/// {(x, y) : |g(x) - g(y)| < epsilon}: center test on every cell, then a
/// one-cell dilation, so the result is an outer cover. Dispatches to the
/// factorized path for g = cos(2 pi x).
GridSet near_level_set(const GFunction& g, double epsilon, std::size_t resolution);

/// Table-driven center test valid for any g.
GridSet near_level_set_generic(const GFunction& g, double epsilon, std::size_t resolution);

/// cos(2 pi x) - cos(2 pi y) = -2 sin(pi (x + y)) sin(pi (x - y)); the sine
/// tables are indexed by i + j and i - j. The threshold carries a 1e-12
/// relative allowance so this path contains the generic one.
GridSet near_level_set_cosine(double epsilon, std::size_t resolution);

/// Number of squares of the delta-grid anchored at 0 that meet a marked cell.
/// Upper-bounds the minimal delta-cover. Requires delta >= 1/M.
std::size_t cover_count(const GridSet& set, double delta);

struct CoverPoint {
  double delta = 0.0;
  std::size_t count = 0;
  /// N(delta) * delta
  double count_delta = 0.0;
  /// N(delta) * delta^2, an upper bound on the measure.
  double cover_measure = 0.0;
};

std::vector<CoverPoint> cover_profile(const GridSet& set, std::span<const double> deltas);

using PhasePair = std::array<double, 2>;

/// (theta_j, theta_j) for j = 1..n, taken from the spec.
std::vector<PhasePair> diagonal_phase_pairs(const FunctionSpec& spec, std::size_t n);

/// Cells whose center, mapped by (x, y) -> (b_j x + theta_x, b_j y + theta_y)
/// mod 1, lands in a marked cell of `set`.
GridSet scaled_preimage(const GridSet& set, const FunctionSpec& spec, const PhasePair& phase,
                        std::size_t j);

/// A intersected with its preimages under the maps for j = 1..n.
/// `phase_pairs[j - 1]` is the shift for step j; an empty list means zero
/// shifts. The resolution is that of `set`.
GridSet iterated_intersection(const GridSet& set, const FunctionSpec& spec,
                              std::span<const PhasePair> phase_pairs, std::size_t n);

/// measure of the intersection chain for n = 0..n_max.
std::vector<double> intersection_measures(const GridSet& set, const FunctionSpec& spec,
                                          std::span<const PhasePair> phase_pairs, std::size_t n_max);

/// Largest n with b_n / M <= 1/4, i.e. at least four cells per oscillation.
std::size_t resolution_cap(const FunctionSpec& spec, std::size_t resolution);

enum class GammaMode { general, integer_b };

struct CoverParams {
  double epsilon = std::numeric_limits<double>::quiet_NaN();
  double delta = 0.0;
  std::size_t n_squares = 0;
  int k = 0;
  double gamma = 0.0;
  /// gamma in (0, 1): the decay bound is informative.
  bool valid = false;
};

/// general: k with 2 / (delta b^k) < 1 <= 2 / (delta b^(k-1)) and
/// gamma = (N (delta + 2 / b^k)^2)^(1/k). integer_b: k = 1, gamma = N delta^2.
CoverParams gamma_bound(std::size_t n_squares, double delta, double b, GammaMode mode,
                        double epsilon = std::numeric_limits<double>::quiet_NaN());

struct DecayFit {
  double rate = 0.0;
  double prefactor = 0.0;
  double r2 = 0.0;
  std::size_t points_used = 0;
  /// A non-positive entry cut the series short.
  bool truncated = false;
};

/// Least squares of log(measure) against n on the longest positive prefix;
/// needs at least three positive leading entries.
DecayFit decay_fit(std::span<const double> measures);

/// A_n = {|g(b_n x + theta_n) - g(b_n y + theta_n)| >= epsilon}, center test.
GridSet level_gap_set(const FunctionSpec& spec, double epsilon, std::size_t n,
                      std::size_t resolution);

struct BSetsResult {
  std::size_t n_max_requested = 0;
  std::size_t n_max_used = 0;
  /// n_max was lowered to resolution_cap().
  bool capped = false;
  /// B_n for n = 0..n_max_used.
  std::vector<GridSet> first_hit;
  /// pair_measures[n0][n1] = L(B_{n0,n1}) for n0 < n1; zero elsewhere.
  std::vector<std::vector<double>> pair_measures;
  /// partial_sums[k] = sum over n0 < n1 <= k of L(B_{n0,n1}) / (a^n0 a^n1).
  std::vector<double> partial_sums;
  /// increments[k] = partial_sums[k] - partial_sums[k - 1]; increments[0] = 0.
  std::vector<double> increments;
  /// residuals[k] = L([0,1]^2 minus B_0 u ... u B_k).
  std::vector<double> residuals;
  double partial_sum = 0.0;
};

BSetsResult b_sets(const FunctionSpec& spec, double epsilon, std::size_t n_max,
                   std::size_t resolution);

}  // namespace wlab
