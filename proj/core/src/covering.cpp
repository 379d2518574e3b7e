#include "wlab/covering.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "wlab/errors.hpp"
#include "wlab/parallel.hpp"

namespace wlab {

namespace {

void check_level_args(double epsilon, std::size_t resolution) {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  if (resolution < 2) throw ConfigError("grid resolution must be >= 2");
}

double center(std::size_t i, std::size_t m) {
  return (static_cast<double>(i) + 0.5) / static_cast<double>(m);
}

// Cell index of a point already reduced to [0, 1).
std::size_t cell_of(double u, std::size_t m) {
  const auto c = static_cast<std::size_t>(u * static_cast<double>(m));
  return std::min(c, m - 1);
}

double wrap_add(double u, double shift) {
  double s = u + shift;
  if (s >= 1.0) s -= 1.0;
  return s;
}

double unit_phase(double theta) {
  double u = theta - std::floor(theta);
  return u >= 1.0 ? 0.0 : u;
}

}  // namespace

GridSet near_level_set_generic(const GFunction& g, double epsilon, std::size_t resolution) {
  check_level_args(epsilon, resolution);
  const std::size_t m = resolution;
  std::vector<double> gv(m);
  for (std::size_t i = 0; i < m; ++i) gv[i] = g(g.period * center(i, m));
  GridSet core(m);
  parallel_for(m, 64, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (std::fabs(gv[i] - gv[j]) < epsilon) core.set(i, j);
      }
    }
  });
  return core.dilated();
}

GridSet near_level_set_cosine(double epsilon, std::size_t resolution) {
  check_level_args(epsilon, resolution);
  const std::size_t m = resolution;
  const double md = static_cast<double>(m);
  // x_c + y_c = (i + j + 1) / M, x_c - y_c = (i - j) / M.
  std::vector<double> sum_sin(2 * m - 1);
  std::vector<double> diff_sin(2 * m - 1);
  for (std::size_t k = 0; k + 1 < 2 * m; ++k) {
    sum_sin[k] = std::sin(std::numbers::pi * static_cast<double>(k + 1) / md);
    diff_sin[k] = std::sin(std::numbers::pi * (static_cast<double>(k) - static_cast<double>(m - 1)) / md);
  }
  const double threshold = epsilon * (1.0 + 1e-12);
  GridSet core(m);
  parallel_for(m, 64, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const double v = 2.0 * sum_sin[i + j] * diff_sin[i + (m - 1) - j];
        if (std::fabs(v) < threshold) core.set(i, j);
      }
    }
  });
  return core.dilated();
}

GridSet near_level_set(const GFunction& g, double epsilon, std::size_t resolution) {
  if (g.kind == GKind::cosine && g.period == 1.0) return near_level_set_cosine(epsilon, resolution);
  return near_level_set_generic(g, epsilon, resolution);
}

std::size_t cover_count(const GridSet& set, double delta) {
  const std::size_t m = set.resolution();
  if (!(delta >= 1.0 / static_cast<double>(m))) {
    throw PreconditionError("cover_count: delta is finer than the grid (delta < 1/M)");
  }
  const auto squares = static_cast<std::size_t>(std::ceil(1.0 / delta));
  const double md = static_cast<double>(m);
  // Range of delta-squares met by cell index i along one axis.
  std::vector<std::size_t> first(m);
  std::vector<std::size_t> last(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double lo = static_cast<double>(i) / md / delta;
    const double hi = static_cast<double>(i + 1) / md / delta;
    first[i] = std::min(static_cast<std::size_t>(std::floor(lo)), squares - 1);
    const double top = std::ceil(hi) - 1.0;
    last[i] = std::min(static_cast<std::size_t>(std::max(top, 0.0)), squares - 1);
    last[i] = std::max(last[i], first[i]);
  }
  std::vector<char> hit(squares * squares, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = set.row(i);
    for (std::size_t w = 0; w < row.size(); ++w) {
      std::uint64_t word = row[w];
      while (word != 0) {
        const std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(word));
        word &= word - 1;
        for (std::size_t p = first[i]; p <= last[i]; ++p) {
          for (std::size_t q = first[j]; q <= last[j]; ++q) hit[p * squares + q] = 1;
        }
      }
    }
  }
  return static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
}

std::vector<CoverPoint> cover_profile(const GridSet& set, std::span<const double> deltas) {
  std::vector<CoverPoint> out;
  out.reserve(deltas.size());
  for (const double d : deltas) {
    CoverPoint p;
    p.delta = d;
    p.count = cover_count(set, d);
    p.count_delta = static_cast<double>(p.count) * d;
    p.cover_measure = static_cast<double>(p.count) * d * d;
    out.push_back(p);
  }
  return out;
}

std::vector<PhasePair> diagonal_phase_pairs(const FunctionSpec& spec, std::size_t n) {
  std::vector<PhasePair> pairs;
  pairs.reserve(n);
  for (std::size_t j = 1; j <= n; ++j) pairs.push_back({spec.theta(j), spec.theta(j)});
  return pairs;
}

GridSet scaled_preimage(const GridSet& set, const FunctionSpec& spec, const PhasePair& phase,
                        std::size_t j) {
  if (j >= spec.max_terms()) throw PreconditionError("scaled_preimage: no frequency b_" + std::to_string(j));
  const std::size_t m = set.resolution();
  const Frequency& freq = spec.frequency(j);
  const double shift_x = unit_phase(phase[0]);
  const double shift_y = unit_phase(phase[1]);
  // The map is separable: row i of the result reads row ix[i] of the set.
  std::vector<std::size_t> ix(m);
  std::vector<std::size_t> iy(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double u = freq.reduce(center(i, m));
    ix[i] = cell_of(wrap_add(u, shift_x), m);
    iy[i] = cell_of(wrap_add(u, shift_y), m);
  }
  GridSet out(m);
  parallel_for(m, 64, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const auto src = set.row(ix[i]);
      auto dst = out.row(i);
      for (std::size_t jj = 0; jj < m; ++jj) {
        const std::size_t c = iy[jj];
        if ((src[c / 64] >> (c % 64)) & 1u) dst[jj / 64] |= std::uint64_t{1} << (jj % 64);
      }
    }
  });
  return out;
}

GridSet iterated_intersection(const GridSet& set, const FunctionSpec& spec,
                              std::span<const PhasePair> phase_pairs, std::size_t n) {
  if (!phase_pairs.empty() && phase_pairs.size() < n) {
    throw ConfigError("iterated_intersection: fewer phase pairs than steps");
  }
  GridSet out = set;
  for (std::size_t j = 1; j <= n; ++j) {
    const PhasePair phase = phase_pairs.empty() ? PhasePair{0.0, 0.0} : phase_pairs[j - 1];
    out &= scaled_preimage(set, spec, phase, j);
  }
  return out;
}

std::vector<double> intersection_measures(const GridSet& set, const FunctionSpec& spec,
                                          std::span<const PhasePair> phase_pairs, std::size_t n_max) {
  if (!phase_pairs.empty() && phase_pairs.size() < n_max) {
    throw ConfigError("intersection_measures: fewer phase pairs than steps");
  }
  std::vector<double> out;
  out.reserve(n_max + 1);
  GridSet chain = set;
  out.push_back(chain.measure());
  for (std::size_t j = 1; j <= n_max; ++j) {
    const PhasePair phase = phase_pairs.empty() ? PhasePair{0.0, 0.0} : phase_pairs[j - 1];
    chain &= scaled_preimage(set, spec, phase, j);
    out.push_back(chain.measure());
  }
  return out;
}

std::size_t resolution_cap(const FunctionSpec& spec, std::size_t resolution) {
  const long double limit = static_cast<long double>(resolution) / 4.0L;
  std::size_t n = 0;
  while (n + 1 < spec.max_terms() && spec.b_n(n + 1) <= limit) ++n;
  return n;
}

CoverParams gamma_bound(std::size_t n_squares, double delta, double b, GammaMode mode,
                        double epsilon) {
  if (n_squares < 1) throw ConfigError("gamma_bound: N must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("gamma_bound: delta must lie in (0, 1)");
  if (!(b > 1.0) || !std::isfinite(b)) throw ConfigError("gamma_bound: b must be > 1");
  CoverParams p;
  p.epsilon = epsilon;
  p.delta = delta;
  p.n_squares = n_squares;
  const double n = static_cast<double>(n_squares);
  if (mode == GammaMode::integer_b) {
    p.k = 1;
    p.gamma = n * delta * delta;
  } else {
    int k = 1;
    while (2.0 / (delta * std::pow(b, k)) >= 1.0) ++k;
    p.k = k;
    const double side = delta + 2.0 / std::pow(b, k);
    p.gamma = std::pow(n * side * side, 1.0 / k);
  }
  p.valid = p.gamma > 0.0 && p.gamma < 1.0;
  return p;
}

DecayFit decay_fit(std::span<const double> measures) {
  std::size_t used = 0;
  while (used < measures.size() && measures[used] > 0.0) ++used;
  if (used < 3) {
    throw PreconditionError("decay_fit needs at least three positive leading measures");
  }
  DecayFit fit;
  fit.points_used = used;
  fit.truncated = used < measures.size();

  double sx = 0.0, sy = 0.0;
  for (std::size_t n = 0; n < used; ++n) {
    sx += static_cast<double>(n);
    sy += std::log(measures[n]);
  }
  const double mx = sx / static_cast<double>(used);
  const double my = sy / static_cast<double>(used);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t n = 0; n < used; ++n) {
    const double dx = static_cast<double>(n) - mx;
    const double dy = std::log(measures[n]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  fit.rate = std::exp(slope);
  fit.prefactor = std::exp(intercept);
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

GridSet level_gap_set(const FunctionSpec& spec, double epsilon, std::size_t n,
                      std::size_t resolution) {
  check_level_args(epsilon, resolution);
  if (n >= spec.max_terms()) throw PreconditionError("level_gap_set: no frequency b_" + std::to_string(n));
  const std::size_t m = resolution;
  std::vector<double> tv(m);
  for (std::size_t i = 0; i < m; ++i) tv[i] = spec.term(n, center(i, m));
  GridSet out(m);
  parallel_for(m, 64, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (std::fabs(tv[i] - tv[j]) >= epsilon) out.set(i, j);
      }
    }
  });
  return out;
}

BSetsResult b_sets(const FunctionSpec& spec, double epsilon, std::size_t n_max,
                   std::size_t resolution) {
  check_level_args(epsilon, resolution);
  if (n_max < 1) throw ConfigError("b_sets: n_max must be >= 1");

  BSetsResult r;
  r.n_max_requested = n_max;
  const std::size_t cap = resolution_cap(spec, resolution);
  r.n_max_used = std::min(n_max, cap);
  r.capped = r.n_max_used < n_max;
  const std::size_t top = r.n_max_used;

  std::vector<GridSet> gaps;
  gaps.reserve(top + 1);
  for (std::size_t n = 0; n <= top; ++n) gaps.push_back(level_gap_set(spec, epsilon, n, resolution));

  // B_n = A_0^c ∩ ... ∩ A_{n-1}^c ∩ A_n
  GridSet untouched = GridSet::full(resolution);
  r.first_hit.reserve(top + 1);
  r.residuals.reserve(top + 1);
  for (std::size_t n = 0; n <= top; ++n) {
    r.first_hit.push_back(untouched & gaps[n]);
    untouched.subtract(gaps[n]);
    r.residuals.push_back(untouched.measure());
  }

  // B_{n0,n1} = B_{n0} ∩ A_{n0+1}^c ∩ ... ∩ A_{n1-1}^c ∩ A_{n1}
  r.pair_measures.assign(top + 1, std::vector<double>(top + 1, 0.0));
  for (std::size_t n0 = 0; n0 < top; ++n0) {
    GridSet running = r.first_hit[n0];
    for (std::size_t n1 = n0 + 1; n1 <= top; ++n1) {
      r.pair_measures[n0][n1] = (running & gaps[n1]).measure();
      running.subtract(gaps[n1]);
    }
  }

  const double a = spec.a();
  r.partial_sums.assign(top + 1, 0.0);
  r.increments.assign(top + 1, 0.0);
  for (std::size_t n1 = 1; n1 <= top; ++n1) {
    double inc = 0.0;
    for (std::size_t n0 = 0; n0 < n1; ++n0) {
      inc += r.pair_measures[n0][n1] /
             (std::pow(a, static_cast<double>(n0)) * std::pow(a, static_cast<double>(n1)));
    }
    r.increments[n1] = inc;
    r.partial_sums[n1] = r.partial_sums[n1 - 1] + inc;
  }
  r.partial_sum = r.partial_sums[top];
  return r;
}

}  // namespace wlab
