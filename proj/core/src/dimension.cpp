#include "wlab/dimension.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

#include "wlab/errors.hpp"
#include "wlab/parallel.hpp"
#include "wlab/rng.hpp"

namespace wlab {

namespace {

struct RowSpan {
  std::int64_t lo;
  std::int64_t hi;
};

std::int64_t row_of(double y, double eps) { return static_cast<std::int64_t>(std::floor(y / eps)); }

// Rows met by a straight piece that includes its start value and excludes
// its end value.
RowSpan piece_rows(double y_start, double y_end, double eps) {
  const std::int64_t rs = row_of(y_start, eps);
  if (y_end > y_start) {
    const auto top = static_cast<std::int64_t>(std::ceil(y_end / eps)) - 1;
    return {rs, std::max(rs, top)};
  }
  if (y_end < y_start) return {row_of(y_end, eps), rs};
  return {rs, rs};
}

struct LineFit {
  double slope;
  double intercept;
  double r2;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx, syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0};
}

constexpr std::size_t kPairChunk = std::size_t{1} << 16;

}  // namespace

std::size_t box_count(const GraphSample& sample, double eps) {
  const auto& xs = sample.xs;
  const auto& ys = sample.ys;
  const std::size_t m = xs.size();
  if (!(eps > 0.0)) throw ConfigError("box_count: eps must be > 0");
  if (m < 2 || ys.size() != m) throw PreconditionError("box_count: need at least two samples");
  const double spacing = (xs.back() - xs.front()) / static_cast<double>(m - 1);
  if (eps < kMinPointsPerColumn * spacing) {
    throw PreconditionError("box_count: fewer than 8 samples per column at this eps");
  }

  const std::int64_t c_first = row_of(xs.front(), eps);
  const std::int64_t c_last = row_of(xs.back(), eps);
  const auto columns = static_cast<std::size_t>(c_last - c_first + 1);
  std::vector<std::int64_t> lo(columns, std::numeric_limits<std::int64_t>::max());
  std::vector<std::int64_t> hi(columns, std::numeric_limits<std::int64_t>::min());
  auto absorb = [&](std::int64_t column, RowSpan span) {
    const auto k = static_cast<std::size_t>(column - c_first);
    lo[k] = std::min(lo[k], span.lo);
    hi[k] = std::max(hi[k], span.hi);
  };

  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double x0 = xs[i], x1 = xs[i + 1];
    const double y0 = ys[i], y1 = ys[i + 1];
    std::int64_t c = row_of(x0, eps);
    double xs_piece = x0;
    double ys_piece = y0;
    for (;;) {
      const double boundary = static_cast<double>(c + 1) * eps;
      if (boundary >= x1) {
        absorb(c, piece_rows(ys_piece, y1, eps));
        break;
      }
      if (boundary > xs_piece) {
        const double yb = y0 + (y1 - y0) * (boundary - x0) / (x1 - x0);
        absorb(c, piece_rows(ys_piece, yb, eps));
        xs_piece = boundary;
        ys_piece = yb;
      }
      ++c;
    }
  }

  std::size_t total = 0;
  for (std::size_t k = 0; k < columns; ++k) {
    if (hi[k] >= lo[k]) total += static_cast<std::size_t>(hi[k] - lo[k] + 1);
  }
  return total;
}

DimensionEstimate box_dimension_estimate(const GraphSample& sample, std::span<const double> scales) {
  if (scales.size() < 4) throw PreconditionError("box dimension needs at least four scales");
  const auto [mn, mx] = std::minmax_element(scales.begin(), scales.end());
  if (!(*mn > 0.0) || *mx / *mn < 4.0) {
    throw PreconditionError("box dimension scales must span at least two octaves");
  }
  DimensionEstimate est;
  est.predicted_D = std::numeric_limits<double>::quiet_NaN();
  est.scales.assign(scales.begin(), scales.end());
  std::vector<double> lx, ly;
  for (const double eps : scales) {
    const std::size_t n = box_count(sample, eps);
    est.counts.push_back(n);
    lx.push_back(-std::log(eps));
    ly.push_back(std::log(static_cast<double>(n)));
  }
  const LineFit fit = fit_line(lx, ly);
  est.slope = fit.slope;
  est.intercept = fit.intercept;
  est.r2 = fit.r2;
  return est;
}

DimensionEstimate box_dimension_estimate(const FunctionSpec& spec, const GraphSample& sample,
                                         std::span<const double> scales) {
  DimensionEstimate est = box_dimension_estimate(sample, scales);
  est.predicted_D = dimension_formula(spec).value;
  return est;
}

std::vector<double> dyadic_scales(int k_lo, int k_hi) {
  std::vector<double> out;
  for (int k = k_lo; k <= k_hi; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

std::vector<double> geometric_scales(const FunctionSpec& spec, std::size_t n_lo, std::size_t n_hi) {
  std::vector<double> out;
  for (std::size_t n = n_lo; n <= n_hi; ++n) out.push_back(static_cast<double>(1.0L / spec.b_n(n)));
  return out;
}

// --- energies ----------------------------------------------------------------

PairSample sample_pairs(const std::function<double(double)>& f, std::size_t n_pairs, std::uint64_t seed) {
  PairSample p;
  p.dx.resize(n_pairs);
  p.df.resize(n_pairs);
  parallel_for(n_pairs, kPairChunk, [&](std::size_t lo, std::size_t hi) {
    const CounterStream stream(derive_seed(seed, static_cast<std::uint64_t>(lo / kPairChunk)));
    for (std::size_t i = lo; i < hi; ++i) {
      const std::uint64_t local = i - lo;
      double x = stream.uniform(2 * local);
      double y = stream.uniform(2 * local + 1);
      for (std::uint64_t attempt = 1; x == y; ++attempt) {
        const std::uint64_t base = 2 * local + 2 * kPairChunk * attempt;
        x = stream.uniform(base);
        y = stream.uniform(base + 1);
      }
      p.dx[i] = x - y;
      p.df[i] = f(x) - f(y);
    }
  });
  return p;
}

PairSample sample_pairs(const FunctionSpec& spec, const CoefficientDraw& draw, std::size_t n_pairs,
                        std::uint64_t seed) {
  if (draw.order > spec.max_terms()) throw PreconditionError("draw order exceeds the available frequencies");
  return sample_pairs([&](double x) { return evaluate(spec, draw, x, draw.order); }, n_pairs, seed);
}

EnergyEstimate energy_from_pairs(const PairSample& pairs, double t) {
  if (!(t >= 0.0 && t < 2.0)) throw ConfigError("energy exponent t must lie in [0, 2)");
  const std::size_t n = pairs.dx.size();
  if (n < 2) throw PreconditionError("energy estimate needs at least two pairs");
  double sum = 0.0;
  double sumsq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d2 = pairs.dx[i] * pairs.dx[i] + pairs.df[i] * pairs.df[i];
    const double v = t == 0.0 ? 1.0 : std::pow(d2, -0.5 * t);
    sum += v;
    sumsq += v * v;
  }
  const double nd = static_cast<double>(n);
  const double mean = sum / nd;
  const double var = std::max(0.0, (sumsq - sum * mean) / (nd - 1.0));
  return {t, mean, std::sqrt(var / nd), n};
}

double energy_growth_exponent(const PairSample& pairs, double t) {
  const std::size_t n = pairs.dx.size();
  if (n < 8) throw PreconditionError("growth diagnostic needs at least eight pairs");
  std::array<double, 4> quarter{};
  double total = 0.0;
  for (std::size_t q = 0; q < 4; ++q) {
    const std::size_t lo = q * n / 4;
    const std::size_t hi = (q + 1) * n / 4;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double d2 = pairs.dx[i] * pairs.dx[i] + pairs.df[i] * pairs.df[i];
      s += std::pow(d2, -0.5 * t);
    }
    total += s;
    quarter[q] = s / static_cast<double>(hi - lo);
  }
  std::sort(quarter.begin(), quarter.end());
  const double median = 0.5 * (quarter[1] + quarter[2]);
  const double mean = total / static_cast<double>(n);
  return std::log(mean / median) / std::log(4.0);
}

EnergyEstimate energy_estimate(const FunctionSpec& spec, const CoefficientDraw& draw, double t,
                               std::size_t n_pairs, std::uint64_t seed) {
  if (!(t >= 0.0 && t < 2.0)) throw ConfigError("energy exponent t must lie in [0, 2)");
  if (n_pairs < 1000) throw PreconditionError("energy estimate needs at least 1000 pairs");
  return energy_from_pairs(sample_pairs(spec, draw, n_pairs, seed), t);
}

EnergyEstimate energy_estimate(const std::function<double(double)>& f, double t, std::size_t n_pairs,
                               std::uint64_t seed) {
  if (!(t >= 0.0 && t < 2.0)) throw ConfigError("energy exponent t must lie in [0, 2)");
  if (n_pairs < 1000) throw PreconditionError("energy estimate needs at least 1000 pairs");
  return energy_from_pairs(sample_pairs(f, n_pairs, seed), t);
}

std::string to_string(EnergyVerdict v) { return v == EnergyVerdict::stable ? "stable" : "diverging"; }

std::vector<EnergyScanRow> energy_threshold_scan(const FunctionSpec& spec, std::span<const double> t_grid,
                                                 std::size_t n_pairs, std::span<const std::uint64_t> seeds,
                                                 double tol) {
  for (const double t : t_grid) {
    if (!(t > 1.0 && t < 2.0)) throw ConfigError("energy scan exponents must lie in (1, 2)");
  }
  if (t_grid.empty()) return {};
  if (seeds.empty()) throw ConfigError("energy scan needs at least one seed");
  if (n_pairs < 1000) throw PreconditionError("energy scan needs at least 1000 pairs per seed");

  const std::size_t order = truncation_order(spec, tol) + 1;
  const std::size_t nt = t_grid.size();
  std::vector<double> value_sum(nt, 0.0), var_sum(nt, 0.0);
  std::vector<std::vector<double>> growth(nt);
  for (const std::uint64_t s : seeds) {
    const CoefficientDraw draw = draw_coefficients(spec, derive_seed(s, "coefficients"), order);
    const PairSample pairs = sample_pairs(spec, draw, n_pairs, derive_seed(s, "pairs"));
    for (std::size_t k = 0; k < nt; ++k) {
      const EnergyEstimate e = energy_from_pairs(pairs, t_grid[k]);
      value_sum[k] += e.value;
      var_sum[k] += e.std_error * e.std_error;
      growth[k].push_back(energy_growth_exponent(pairs, t_grid[k]));
    }
  }
  const auto ns = static_cast<double>(seeds.size());
  std::vector<EnergyScanRow> rows;
  rows.reserve(nt);
  for (std::size_t k = 0; k < nt; ++k) {
    EnergyScanRow row;
    row.t = t_grid[k];
    row.seeds = seeds.size();
    row.estimate = {t_grid[k], value_sum[k] / ns, std::sqrt(var_sum[k]) / ns, n_pairs};
    // One seed with a near-coincident pair can dominate a mean of exponents
    // even where I_t is finite, so the seeds are combined by their median.
    auto& g = growth[k];
    std::sort(g.begin(), g.end());
    const std::size_t h = g.size() / 2;
    row.growth_exponent = g.size() % 2 ? g[h] : 0.5 * (g[h - 1] + g[h]);
    row.verdict = row.growth_exponent > kDivergenceGrowthThreshold ? EnergyVerdict::diverging
                                                                   : EnergyVerdict::stable;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace wlab
