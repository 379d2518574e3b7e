#include "wlab/verify/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_set>
#include <variant>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "wlab/errors.hpp"

namespace wlab::verify {

namespace {

struct CellHash {
  std::size_t operator()(const std::pair<long long, long long>& c) const noexcept {
    return std::hash<long long>{}(c.first * 1000003LL ^ c.second);
  }
};

using big = boost::multiprecision::cpp_bin_float_100;

}  // namespace

std::size_t box_count_bruteforce(const GraphSample& sample, double eps) {
  std::unordered_set<std::pair<long long, long long>, CellHash> boxes;
  const auto& xs = sample.xs;
  const auto& ys = sample.ys;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double x0 = xs[i], x1 = xs[i + 1], y0 = ys[i], y1 = ys[i + 1];
    std::vector<double> cuts{0.0, 1.0};
    // Column crossings, as fractions of the segment.
    for (double c = std::floor(x0 / eps) + 1; c * eps < x1; ++c) cuts.push_back((c * eps - x0) / (x1 - x0));
    // Row crossings.
    if (y1 != y0) {
      const double lo = std::min(y0, y1), hi = std::max(y0, y1);
      for (double r = std::floor(lo / eps) + 1; r * eps < hi; ++r) cuts.push_back((r * eps - y0) / (y1 - y0));
    }
    // The vertex itself belongs to the graph even when it sits on a box edge.
    boxes.emplace(static_cast<long long>(std::floor(x0 / eps)), static_cast<long long>(std::floor(y0 / eps)));
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      if (!(cuts[k + 1] > cuts[k])) continue;
      const double s = 0.5 * (cuts[k] + cuts[k + 1]);
      const double x = x0 + s * (x1 - x0);
      const double y = y0 + s * (y1 - y0);
      boxes.emplace(static_cast<long long>(std::floor(x / eps)), static_cast<long long>(std::floor(y / eps)));
    }
  }
  return boxes.size();
}

double evaluate_high_precision(const FunctionSpec& spec, const CoefficientDraw& draw, double x,
                               std::size_t order) {
  if (order > draw.values.size()) throw PreconditionError("oracle: draw shorter than order");
  const big pi = boost::math::constants::pi<big>();
  big total = 0;
  big bn = 1;
  const big bx = x;
  for (std::size_t n = 0; n < order; ++n) {
    if (n > 0) {
      if (!spec.frequency(n).integral) {
        // Non-integer frequencies are defined by their stored long double value.
        bn = big(spec.b_n(n));
      } else if (spec.geometric()) {
        bn *= big(spec.b());
      } else {
        bn = big(std::get<ExplicitFrequencies>(spec.freq_mode()).b_seq.at(n));
      }
    }
    big arg = bn * bx + big(spec.theta(n));
    arg -= floor(arg);
    big g = cos(2 * pi * arg);
    if (spec.g().kind == GKind::cosine_two_harmonic) g += cos(4 * pi * arg) / 2;
    total += big(draw.values[n]) * g;
  }
  return static_cast<double>(total);
}

std::vector<std::vector<std::size_t>> pair_counts_bruteforce(const FunctionSpec& spec, double epsilon,
                                                             std::size_t n_max, std::size_t resolution) {
  const std::size_t m = resolution;
  std::vector<std::vector<double>> tv(n_max + 1, std::vector<double>(m));
  for (std::size_t n = 0; n <= n_max; ++n) {
    for (std::size_t i = 0; i < m; ++i) {
      tv[n][i] = spec.term(n, (static_cast<double>(i) + 0.5) / static_cast<double>(m));
    }
  }
  std::vector<std::vector<std::size_t>> counts(n_max + 1, std::vector<std::size_t>(n_max + 1, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      std::size_t hits[2];
      std::size_t found = 0;
      for (std::size_t n = 0; n <= n_max && found < 2; ++n) {
        if (std::fabs(tv[n][i] - tv[n][j]) >= epsilon) hits[found++] = n;
      }
      if (found == 2) ++counts[hits[0]][hits[1]];
    }
  }
  return counts;
}

double energy_zero_closed_form(double t) { return 2.0 / ((1.0 - t) * (2.0 - t)); }

double parseval_identity_truncated(double u_max) {
  // Integrand is even; integrate over [0, u_max] and double.
  const std::size_t steps = 2 * static_cast<std::size_t>(std::ceil(u_max * 200.0));
  const double h = u_max / static_cast<double>(steps);
  auto f = [](double u) {
    if (u == 0.0) return 1.0;
    const double s = std::sin(0.5 * u) / (0.5 * u);
    return s * s;
  };
  double sum = f(0.0) + f(u_max);
  for (std::size_t k = 1; k < steps; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(h * static_cast<double>(k));
  return 2.0 * sum * h / 3.0 / (2.0 * std::numbers::pi);
}

}  // namespace wlab::verify
