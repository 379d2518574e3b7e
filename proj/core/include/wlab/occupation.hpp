#pragma once

// Occupation measure mu(S) = L{x in [0,1] : f(x) in S}: histogram density,
// Fourier transform, the Parseval cross-check, and the sinc-product form of
// the average of exp(iu (f(x) - f(y))) over the random amplitudes.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wlab/grid_set.hpp"
#include "wlab/series.hpp"

namespace wlab {

struct OccupationDensity {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t bins = 0;
  double binwidth = 0.0;
  /// Density per bin (mass / binwidth).
  std::vector<double> weights;
  /// sum rho^2 * binwidth
  double l2_sq = 0.0;
  /// More than half of the mass sits in one bin (f close to constant).
  bool degenerate = false;

  double bin_center(std::size_t k) const { return lo + (static_cast<double>(k) + 0.5) * binwidth; }
};

/// `bins` bins of width (max - min) / bins over the sampled range plus one
/// padding bin on each side, so weights has bins + 2 entries. Each sample
/// carries mass 1 / m. Requires at least 100 samples per bin.
OccupationDensity occupation_histogram(const GraphSample& sample, std::size_t bins);

struct FourierProfile {
  std::vector<double> us;
  std::vector<std::complex<double>> values;
  std::size_t quadrature_points = 0;
};

/// mu_hat(u) = (1/m) sum_j exp(i u y_j): rectangle rule in x on the sample grid.
FourierProfile fourier_transform(const GraphSample& sample, std::span<const double> us);

/// Symmetric grid -u_max..u_max whose spacing does not exceed max_spacing.
std::vector<double> symmetric_u_grid(double u_max, double max_spacing);

struct ParsevalReport {
  double u_max = 0.0;
  double spacing = 0.0;
  /// (1 / 2 pi) * integral of |mu_hat|^2 over [-u_max, u_max]
  double integral = 0.0;
  /// Estimated contribution of |u| > u_max; infinite when the decay is too slow.
  double tail = 0.0;
  /// Power-law exponent of |mu_hat|^2 fitted on the last two octaves.
  double decay_exponent = 0.0;
  double l2_sq = 0.0;
  /// |integral + tail - l2_sq| / l2_sq; infinite when not in L^2.
  double discrepancy = 0.0;
  bool in_l2 = true;
};

/// Needs a symmetric profile reaching +-u_max with spacing <= pi / (hi - lo).
ParsevalReport parseval_check(const OccupationDensity& density, const FourierProfile& profile,
                              double u_max);

/// Doubles u from `u_start` until the mean of |mu_hat|^2 over [u/2, u] drops
/// below `threshold`; returns that u, or nullopt when `u_limit` is reached.
std::optional<double> adaptive_u_max(const GraphSample& sample, double threshold = 1e-4,
                                     double u_start = 8.0, double u_limit = 65536.0);

struct SincFactors {
  double x = 0.0;
  double y = 0.0;
  double u = 0.0;
  /// alpha_n = a^n (g(b_n x + theta_n) - g(b_n y + theta_n))
  std::vector<double> alphas;
  /// sin(u alpha_n) / (u alpha_n)
  std::vector<double> factors;
  double product = 1.0;
  /// Every omitted factor is at least 1 - (2 u sup|g| a^order)^2 / 6.
  double tail_factor_bound = 1.0;
  /// Lower bound on the product of all omitted factors (-1 when vacuous).
  double tail_lower = 1.0;
};

/// sin(z)/z with the removable singularity handled by 1 - z^2/6 below 1e-8.
double sinc(double z);

SincFactors sinc_product(const FunctionSpec& spec, double x, double y, double u, std::size_t order);

struct OmegaAverage {
  double mean_real = 1.0;
  double std_error = 0.0;
  /// Averages to zero by symmetry of the amplitude law; kept as a check.
  double mean_imag = 0.0;
  double imag_std_error = 0.0;
  std::size_t n_draws = 0;
};

/// Monte Carlo mean of exp(i u (f(x) - f(y))) over independent draws; draw d
/// uses draw_coefficients(spec, derive_seed(seed, d), order).
OmegaAverage omega_average_mc(const FunctionSpec& spec, double x, double y, double u, std::size_t n_draws,
                              std::uint64_t seed, std::size_t order);

struct Fact31Report {
  std::size_t n0 = 0;
  std::size_t n1 = 0;
  double epsilon = 0.0;
  double u = 0.0;
  /// 1 / (epsilon^2 u^2 a^(n0 + n1))
  double bound = 0.0;
  std::size_t pairs_checked = 0;
  /// Sampled cells whose centers fail |g(b_n x) - g(b_n y)| >= epsilon for n0 or n1.
  std::size_t skipped = 0;
  /// max over checked pairs of |product| / bound
  double max_ratio = 0.0;
  bool passed = true;
};

/// A_{n0} ∩ A_{n1} on the grid.
GridSet fact31_region(const FunctionSpec& spec, double epsilon, std::size_t n0, std::size_t n1,
                      std::size_t resolution);

/// Samples cell centers uniformly from `region` and checks the sinc product of
/// `order` factors against the bound pointwise. An empty region passes.
Fact31Report fact31_bound_check(const FunctionSpec& spec, double epsilon, double u, std::size_t n0,
                                std::size_t n1, const GridSet& region, std::size_t n_pairs,
                                std::uint64_t seed, std::size_t order);

}  // namespace wlab
