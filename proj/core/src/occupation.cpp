#include "wlab/occupation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wlab/covering.hpp"
#include "wlab/errors.hpp"
#include "wlab/parallel.hpp"
#include "wlab/rng.hpp"

namespace wlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double octave_mean(const FourierProfile& p, double lo, double hi) {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < p.us.size(); ++k) {
    const double au = std::fabs(p.us[k]);
    if (au >= lo && au <= hi) {
      sum += std::norm(p.values[k]);
      ++n;
    }
  }
  return n > 0 ? sum / static_cast<double>(n) : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

OccupationDensity occupation_histogram(const GraphSample& sample, std::size_t bins) {
  if (bins < 2) throw ConfigError("occupation histogram needs at least two bins");
  const std::size_t m = sample.ys.size();
  if (m < 100 * bins) throw PreconditionError("occupation histogram needs at least 100 samples per bin");

  const auto [mn_it, mx_it] = std::minmax_element(sample.ys.begin(), sample.ys.end());
  const double mn = *mn_it;
  const double span = *mx_it - mn;
  OccupationDensity d;
  d.binwidth = span > 0.0 ? span / static_cast<double>(bins) : 1.0 / static_cast<double>(bins);
  d.bins = bins + 2;
  d.lo = mn - d.binwidth;
  d.hi = d.lo + static_cast<double>(d.bins) * d.binwidth;

  const std::size_t grain = 1u << 16;
  const std::size_t chunks = (m + grain - 1) / grain;
  std::vector<std::vector<std::size_t>> partial(chunks, std::vector<std::size_t>(d.bins, 0));
  parallel_for(m, grain, [&](std::size_t lo, std::size_t hi) {
    auto& counts = partial[lo / grain];
    for (std::size_t i = lo; i < hi; ++i) {
      // Real bins are 1..bins; the maximum belongs to the last of them.
      const double pos = (sample.ys[i] - mn) / d.binwidth;
      const auto k = std::min(static_cast<std::size_t>(std::max(pos, 0.0)), bins - 1);
      ++counts[k + 1];
    }
  });
  std::vector<std::size_t> counts(d.bins, 0);
  for (const auto& part : partial) {
    for (std::size_t k = 0; k < d.bins; ++k) counts[k] += part[k];
  }

  const double md = static_cast<double>(m);
  d.weights.resize(d.bins);
  std::size_t largest = 0;
  for (std::size_t k = 0; k < d.bins; ++k) {
    d.weights[k] = static_cast<double>(counts[k]) / md / d.binwidth;
    d.l2_sq += d.weights[k] * d.weights[k] * d.binwidth;
    largest = std::max(largest, counts[k]);
  }
  d.degenerate = 2 * largest > m;
  return d;
}

FourierProfile fourier_transform(const GraphSample& sample, std::span<const double> us) {
  if (us.empty()) throw ConfigError("fourier_transform needs at least one frequency");
  if (sample.ys.empty()) throw PreconditionError("fourier_transform needs a nonempty sample");
  FourierProfile p;
  p.us.assign(us.begin(), us.end());
  p.values.resize(us.size());
  p.quadrature_points = sample.ys.size();
  const auto md = static_cast<double>(sample.ys.size());
  parallel_for(us.size(), 1, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const double u = us[k];
      double re = 0.0, im = 0.0;
      for (const double y : sample.ys) {
        const double phase = u * y;
        re += std::cos(phase);
        im += std::sin(phase);
      }
      p.values[k] = {re / md, im / md};
    }
  });
  return p;
}

std::vector<double> symmetric_u_grid(double u_max, double max_spacing) {
  if (!(u_max > 0.0) || !(max_spacing > 0.0)) throw ConfigError("u grid needs u_max > 0 and spacing > 0");
  const auto half = static_cast<std::size_t>(std::ceil(u_max / max_spacing));
  std::vector<double> us(2 * half + 1);
  const double h = u_max / static_cast<double>(half);
  for (std::size_t k = 0; k <= half; ++k) {
    const double u = k == half ? u_max : h * static_cast<double>(k);
    us[half + k] = u;
    us[half - k] = -u;
  }
  return us;
}

ParsevalReport parseval_check(const OccupationDensity& density, const FourierProfile& profile,
                              double u_max) {
  if (!(u_max > 0.0)) throw ConfigError("parseval_check: u_max must be > 0");
  const auto& us = profile.us;
  const std::size_t n = us.size();
  if (n < 3 || profile.values.size() != n) throw PreconditionError("parseval_check: profile too short");
  const double slack = 1e-12 * u_max;
  if (us.front() > -u_max + slack || us.back() < u_max - slack) {
    throw PreconditionError("parseval_check: profile does not reach +-u_max");
  }
  const double allowed = std::numbers::pi / (density.hi - density.lo);
  ParsevalReport r;
  r.u_max = u_max;
  r.l2_sq = density.l2_sq;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!(us[k + 1] > us[k])) throw PreconditionError("parseval_check: u grid must be increasing");
    if (std::fabs(us[k] + us[n - 1 - k]) > slack) {
      throw PreconditionError("parseval_check: u grid must be symmetric");
    }
    if (us[k] >= -u_max - slack && us[k + 1] <= u_max + slack) r.spacing = std::max(r.spacing, us[k + 1] - us[k]);
  }
  if (r.spacing > allowed * (1.0 + 1e-12)) {
    throw PreconditionError("parseval_check: u spacing exceeds pi / (hi - lo); |mu_hat|^2 would alias");
  }

  double integral = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (us[k] < -u_max - slack || us[k + 1] > u_max + slack) continue;
    integral += 0.5 * (std::norm(profile.values[k]) + std::norm(profile.values[k + 1])) * (us[k + 1] - us[k]);
  }
  r.integral = integral / (2.0 * std::numbers::pi);

  const double inner = octave_mean(profile, 0.25 * u_max, 0.5 * u_max);
  const double outer = octave_mean(profile, 0.5 * u_max, u_max);
  r.decay_exponent = (inner > 0.0 && outer > 0.0) ? std::log2(inner / outer) : 0.0;
  r.in_l2 = !density.degenerate && r.decay_exponent > 1.0;
  if (r.in_l2) {
    const double p = r.decay_exponent;
    const double coeff = outer * std::pow(u_max / std::numbers::sqrt2, p);
    r.tail = 2.0 * coeff * std::pow(u_max, 1.0 - p) / (p - 1.0) / (2.0 * std::numbers::pi);
    r.discrepancy = std::fabs(r.integral + r.tail - r.l2_sq) / r.l2_sq;
  } else {
    r.tail = kInf;
    r.discrepancy = kInf;
  }
  return r;
}

std::optional<double> adaptive_u_max(const GraphSample& sample, double threshold, double u_start,
                                     double u_limit) {
  if (!(threshold > 0.0) || !(u_start > 0.0)) throw ConfigError("adaptive_u_max: bad parameters");
  constexpr std::size_t kProbe = 32;
  for (double u = u_start; u <= u_limit; u *= 2.0) {
    std::vector<double> us(kProbe);
    for (std::size_t k = 0; k < kProbe; ++k) {
      us[k] = 0.5 * u + 0.5 * u * static_cast<double>(k) / static_cast<double>(kProbe - 1);
    }
    const FourierProfile p = fourier_transform(sample, us);
    double mean = 0.0;
    for (const auto& v : p.values) mean += std::norm(v);
    mean /= static_cast<double>(kProbe);
    if (mean < threshold) return u;
  }
  return std::nullopt;
}

double sinc(double z) {
  if (std::fabs(z) < 1e-8) return 1.0 - z * z / 6.0;
  return std::sin(z) / z;
}

SincFactors sinc_product(const FunctionSpec& spec, double x, double y, double u, std::size_t order) {
  if (order < 1) throw ConfigError("sinc_product: order must be >= 1");
  if (order > spec.max_terms()) throw PreconditionError("sinc_product: order exceeds available frequencies");
  SincFactors s;
  s.x = x;
  s.y = y;
  s.u = u;
  s.alphas.resize(order);
  s.factors.resize(order);
  for (std::size_t n = 0; n < order; ++n) {
    const double amp = std::pow(spec.a(), static_cast<double>(n));
    s.alphas[n] = amp * (spec.term(n, x) - spec.term(n, y));
    s.factors[n] = sinc(u * s.alphas[n]);
    s.product *= s.factors[n];
  }
  const double zmax = std::fabs(u) * 2.0 * spec.g().sup_abs * std::pow(spec.a(), static_cast<double>(order));
  s.tail_factor_bound = 1.0 - zmax * zmax / 6.0;
  const double a2 = spec.a() * spec.a();
  const double tail_sum = zmax * zmax / (6.0 * (1.0 - a2));
  s.tail_lower = (zmax * zmax / 6.0 <= 1.0 && tail_sum <= 2.0) ? std::max(-1.0, 1.0 - tail_sum) : -1.0;
  return s;
}

OmegaAverage omega_average_mc(const FunctionSpec& spec, double x, double y, double u, std::size_t n_draws,
                              std::uint64_t seed, std::size_t order) {
  if (n_draws < 1000) throw PreconditionError("omega_average_mc needs at least 1000 draws");
  if (order < 1 || order > spec.max_terms()) throw PreconditionError("omega_average_mc: bad order");
  std::vector<double> diff(order), amp(order);
  for (std::size_t n = 0; n < order; ++n) {
    diff[n] = spec.term(n, x) - spec.term(n, y);
    amp[n] = std::pow(spec.a(), static_cast<double>(n));
  }

  constexpr std::size_t kGrain = 4096;
  const std::size_t chunks = (n_draws + kGrain - 1) / kGrain;
  struct Sums {
    double c = 0, cc = 0, s = 0, ss = 0;
  };
  std::vector<Sums> partial(chunks);
  parallel_for(n_draws, kGrain, [&](std::size_t lo, std::size_t hi) {
    Sums acc;
    for (std::size_t d = lo; d < hi; ++d) {
      const CounterStream stream(derive_seed(seed, static_cast<std::uint64_t>(d)));
      double delta = 0.0;
      for (std::size_t n = 0; n < order; ++n) {
        delta += amp[n] * (2.0 * stream.uniform(n) - 1.0) * diff[n];
      }
      const double c = std::cos(u * delta);
      const double s = std::sin(u * delta);
      acc.c += c;
      acc.cc += c * c;
      acc.s += s;
      acc.ss += s * s;
    }
    partial[lo / kGrain] = acc;
  });
  Sums total;
  for (const auto& p : partial) {
    total.c += p.c;
    total.cc += p.cc;
    total.s += p.s;
    total.ss += p.ss;
  }
  const double nd = static_cast<double>(n_draws);
  OmegaAverage r;
  r.n_draws = n_draws;
  r.mean_real = total.c / nd;
  r.mean_imag = total.s / nd;
  r.std_error = std::sqrt(std::max(0.0, (total.cc - total.c * r.mean_real) / (nd - 1.0)) / nd);
  r.imag_std_error = std::sqrt(std::max(0.0, (total.ss - total.s * r.mean_imag) / (nd - 1.0)) / nd);
  return r;
}

GridSet fact31_region(const FunctionSpec& spec, double epsilon, std::size_t n0, std::size_t n1,
                      std::size_t resolution) {
  return level_gap_set(spec, epsilon, n0, resolution) & level_gap_set(spec, epsilon, n1, resolution);
}

Fact31Report fact31_bound_check(const FunctionSpec& spec, double epsilon, double u, std::size_t n0,
                                std::size_t n1, const GridSet& region, std::size_t n_pairs,
                                std::uint64_t seed, std::size_t order) {
  if (n0 == n1) throw ConfigError("fact31_bound_check: n0 and n1 must differ");
  if (!(epsilon > 0.0) || u == 0.0) throw ConfigError("fact31_bound_check: need epsilon > 0 and u != 0");
  if (order <= std::max(n0, n1)) throw ConfigError("fact31_bound_check: order must exceed n0 and n1");

  Fact31Report r;
  r.n0 = n0;
  r.n1 = n1;
  r.epsilon = epsilon;
  r.u = u;
  const double scale = epsilon * u * std::pow(spec.a(), 0.5 * static_cast<double>(n0 + n1));
  r.bound = 1.0 / (scale * scale);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> cells;
  const std::size_t m = region.resolution();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (region.test(i, j)) cells.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }
  }
  if (cells.empty()) return r;

  const CounterStream stream(seed);
  const double md = static_cast<double>(m);
  for (std::size_t k = 0; k < n_pairs; ++k) {
    const auto pick = std::min(cells.size() - 1,
                               static_cast<std::size_t>(stream.uniform(k) * static_cast<double>(cells.size())));
    const double x = (cells[pick].first + 0.5) / md;
    const double y = (cells[pick].second + 0.5) / md;
    if (std::fabs(spec.term(n0, x) - spec.term(n0, y)) < epsilon ||
        std::fabs(spec.term(n1, x) - spec.term(n1, y)) < epsilon) {
      ++r.skipped;
      continue;
    }
    const double product = sinc_product(spec, x, y, u, order).product;
    r.max_ratio = std::max(r.max_ratio, std::fabs(product) / r.bound);
    ++r.pairs_checked;
  }
  r.passed = r.max_ratio <= 1.0;
  return r;
}

}  // namespace wlab
