#include "wlab/series.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "wlab/errors.hpp"
#include "wlab/parallel.hpp"
#include "wlab/rng.hpp"

namespace wlab {

namespace {

using u128 = unsigned __int128;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kSupSamples = 1u << 16;

void measure_suprema(GFunction& g) {
  double lip = 0.0;
  double sup = 0.0;
  for (std::size_t i = 0; i <= kSupSamples; ++i) {
    const double x = g.period * static_cast<double>(i) / kSupSamples;
    lip = std::max(lip, std::fabs(g.derivative(x)));
    sup = std::max(sup, std::fabs(g(x)));
  }
  g.lipschitz = lip;
  g.sup_abs = sup;
}

bool is_integral(long double v) {
  return std::isfinite(v) && v >= 1.0L && v == std::floor(v);
}

// b mod 2^128 for an integer-valued double.
u128 residue_of(double v) {
  int e = 0;
  const double mant = std::frexp(v, &e);
  const auto m = static_cast<std::uint64_t>(std::ldexp(mant, 53));
  const int shift = e - 53;
  if (shift >= 128) return 0;
  if (shift >= 0) return static_cast<u128>(m) << shift;
  return static_cast<u128>(m >> (-shift));
}

double reduce_integral(u128 residue, long double value, double ax) {
  int e = 0;
  const double mant = std::frexp(ax, &e);
  auto m = static_cast<std::uint64_t>(std::ldexp(mant, 53));
  int k = 53 - e;  // ax = m * 2^-k
  if (k <= 0) return 0.0;
  const int s = std::min(std::countr_zero(m), k);
  m >>= s;
  k -= s;
  if (k == 0) return 0.0;
  if (k <= 128) {
    const u128 prod = residue * static_cast<u128>(m);
    const u128 r = k == 128 ? prod : (prod & ((static_cast<u128>(1) << k) - 1));
    return static_cast<double>(std::ldexp(static_cast<long double>(r), -k));
  }
  // |x| < 2^-75: the residue no longer determines the low bits.
  long double p = value * static_cast<long double>(ax);
  p -= std::floor(p);
  return static_cast<double>(p);
}

// frac(value * ax) from the exact 117-bit product of the two mantissas.
double reduce_exact_product(long double value, double ax) {
  int ev = 0, ex = 0;
  const auto mv = static_cast<std::uint64_t>(std::ldexp(std::frexp(value, &ev), 64));
  const auto mx = static_cast<std::uint64_t>(std::ldexp(std::frexp(ax, &ex), 53));
  const int k = 117 - ev - ex;  // value * ax = prod * 2^-k
  if (k <= 0) return 0.0;
  const u128 prod = static_cast<u128>(mv) * mx;
  if (k >= 128) return static_cast<double>(std::ldexp(static_cast<long double>(prod), -k));
  const u128 r = prod & ((static_cast<u128>(1) << k) - 1);
  return static_cast<double>(std::ldexp(static_cast<long double>(r), -k));
}

}  // namespace

// --- GFunction -------------------------------------------------------------

GFunction GFunction::cosine() {
  GFunction g;
  g.kind = GKind::cosine;
  measure_suprema(g);
  return g;
}

GFunction GFunction::cosine_two_harmonic() {
  GFunction g;
  g.kind = GKind::cosine_two_harmonic;
  measure_suprema(g);
  return g;
}

GFunction GFunction::from_name(std::string_view name) {
  if (name == "cos") return cosine();
  if (name == "cos2") return cosine_two_harmonic();
  throw ConfigError("unknown base function '" + std::string(name) + "' (expected cos or cos2)");
}

std::string GFunction::name() const {
  return kind == GKind::cosine ? "cos" : "cos2";
}

double GFunction::operator()(double x) const {
  switch (kind) {
    case GKind::cosine:
      return std::cos(kTwoPi * x);
    case GKind::cosine_two_harmonic:
      return std::cos(kTwoPi * x) + 0.5 * std::cos(2.0 * kTwoPi * x);
  }
  return 0.0;
}

double GFunction::derivative(double x) const {
  switch (kind) {
    case GKind::cosine:
      return -kTwoPi * std::sin(kTwoPi * x);
    case GKind::cosine_two_harmonic:
      return -kTwoPi * std::sin(kTwoPi * x) - kTwoPi * std::sin(2.0 * kTwoPi * x);
  }
  return 0.0;
}

double GFunction::at_phase(double phase) const { return (*this)(phase * period); }

// --- Frequency -------------------------------------------------------------

double Frequency::reduce(double x) const {
  if (x == 0.0) return 0.0;
  const double ax = std::fabs(x);
  double r = 0.0;
  if (integral) {
    r = reduce_integral(residue, value, ax);
  } else {
    r = reduce_exact_product(value, ax);
  }
  if (r >= 1.0) r = 0.0;
  if (x < 0.0 && r != 0.0) {
    r = 1.0 - r;
    if (r >= 1.0) r = 0.0;
  }
  return r;
}

// --- FunctionSpec ----------------------------------------------------------

double FunctionSpec::term(std::size_t n, double x) const {
  double s = freqs_[n].reduce(x) + theta_unit(n);
  if (s >= 1.0) s -= 1.0;
  return g_.at_phase(s);
}

FunctionSpec build_spec(double a, FrequencyMode mode, std::vector<double> phases, GFunction g) {
  if (!(a > 0.0 && a < 1.0)) {
    std::ostringstream msg;
    msg << "a must lie in (0, 1), got " << a;
    throw ConfigError(msg.str());
  }
  for (const double th : phases) {
    if (!std::isfinite(th)) throw ConfigError("phases must be finite");
  }

  FunctionSpec spec;
  spec.a_ = a;
  spec.g_ = g;

  bool integer_powers = false;
  if (const auto* geo = std::get_if<GeometricFrequencies>(&mode)) {
    if (!(geo->b > 1.0) || !std::isfinite(geo->b)) throw ConfigError("b must be a finite real > 1");
    spec.b_ = geo->b;
    const bool integral = is_integral(geo->b) && geo->b < 0x1.0p64;
    integer_powers = integral;
    const auto base = static_cast<long double>(geo->b);
    const u128 base_residue = integral ? static_cast<u128>(static_cast<std::uint64_t>(geo->b)) : 0;
    long double value = 1.0L;
    u128 residue = 1;
    for (std::size_t n = 0; n < kGeometricTableTerms; ++n) {
      if (!std::isfinite(value)) break;
      Frequency f;
      f.value = integral ? value : std::pow(base, static_cast<long double>(n));
      if (!std::isfinite(f.value)) break;
      f.integral = integral;
      f.residue = residue;
      spec.freqs_.push_back(f);
      value *= base;
      residue *= base_residue;
    }
  } else {
    auto& ex = std::get<ExplicitFrequencies>(mode);
    if (ex.b_seq.empty()) throw ConfigError("explicit b_seq must not be empty");
    if (ex.b_seq.front() != 1.0) throw ConfigError("explicit b_seq must start with b_0 = 1");
    double min_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < ex.b_seq.size(); ++n) {
      if (!std::isfinite(ex.b_seq[n]) || ex.b_seq[n] <= 0.0) {
        throw ConfigError("explicit b_seq entries must be finite and positive");
      }
      if (n > 0) min_ratio = std::min(min_ratio, ex.b_seq[n] / ex.b_seq[n - 1]);
    }
    const double b = ex.b.value_or(min_ratio);
    if (!(b > 1.0) || !std::isfinite(b)) {
      throw ConfigError("explicit frequencies need a ratio bound b > 1");
    }
    if (min_ratio < b) {
      std::ostringstream msg;
      msg << "explicit b_seq has a consecutive ratio " << min_ratio << " below b = " << b;
      throw ConfigError(msg.str());
    }
    ex.b = b;
    spec.b_ = b;
    integer_powers = is_integral(b);
    for (std::size_t n = 0; n < ex.b_seq.size(); ++n) {
      const double v = ex.b_seq[n];
      Frequency f;
      f.value = v;
      f.integral = is_integral(v);
      f.residue = f.integral ? residue_of(v) : 0;
      spec.freqs_.push_back(f);
      if (integer_powers && static_cast<long double>(v) != std::pow(static_cast<long double>(b),
                                                                    static_cast<long double>(n))) {
        integer_powers = false;
      }
    }
  }
  spec.mode_ = std::move(mode);

  spec.theta_unit_.reserve(phases.size());
  for (const double th : phases) {
    double u = th - std::floor(th);
    if (u >= 1.0) u = 0.0;
    spec.theta_unit_.push_back(u);
  }
  const bool theta_zero = std::all_of(phases.begin(), phases.end(), [](double th) { return th == 0.0; });
  spec.phases_ = std::move(phases);

  spec.flags_.ab_gt1 = a * spec.b_ > 1.0;
  spec.flags_.a2b_gt1 = a * a * spec.b_ > 1.0;
  spec.flags_.b_integer_theta_zero = integer_powers && theta_zero;
  if (!spec.flags_.ab_gt1) {
    std::ostringstream msg;
    msg << "a*b = " << a * spec.b_ << " <= 1: the dimension formula does not apply";
    spec.warnings_.push_back(msg.str());
  }
  return spec;
}

// --- Coefficients and truncation ------------------------------------------

CoefficientDraw draw_coefficients(const FunctionSpec& spec, std::uint64_t seed, std::size_t order) {
  if (order < 1) throw ConfigError("coefficient order must be >= 1");
  CoefficientDraw draw;
  draw.seed = seed;
  draw.order = order;
  draw.values.resize(order);
  const CounterStream stream(seed);
  for (std::size_t n = 0; n < order; ++n) {
    const double amplitude = std::pow(spec.a(), static_cast<double>(n));
    draw.values[n] = amplitude * (2.0 * stream.uniform(n) - 1.0);
  }
  return draw;
}

CoefficientDraw zero_draw(std::size_t order) {
  CoefficientDraw draw;
  draw.order = order;
  draw.values.assign(order, 0.0);
  return draw;
}

std::size_t truncation_order(const FunctionSpec& spec, double tol) {
  if (!(tol > 0.0)) throw ConfigError("truncation tolerance must be > 0");
  const double a = spec.a();
  const double scale = 2.0 * spec.g().sup_abs / (1.0 - a);
  std::size_t n = 0;
  while (scale * std::pow(a, static_cast<double>(n + 1)) > tol) ++n;
  return n;
}

double default_tolerance(const FunctionSpec& spec) {
  return 1e-9 * spec.g().sup_abs / (1.0 - spec.a());
}

double evaluate(const FunctionSpec& spec, const CoefficientDraw& draw, double x, std::size_t order) {
  if (order > draw.order || order > draw.values.size()) {
    throw PreconditionError("evaluation order exceeds the number of drawn coefficients");
  }
  if (order > spec.max_terms()) {
    throw PreconditionError("evaluation order exceeds the available frequencies");
  }
  double sum = 0.0;
  for (std::size_t n = 0; n < order; ++n) {
    if (draw.values[n] != 0.0) sum += draw.values[n] * spec.term(n, x);
  }
  return sum;
}

void evaluate_many(const FunctionSpec& spec, const CoefficientDraw& draw, std::span<const double> xs,
                   std::size_t order, std::span<double> out) {
  if (out.size() != xs.size()) throw ConfigError("evaluate_many: output size mismatch");
  if (order > draw.order || order > spec.max_terms()) {
    throw PreconditionError("evaluation order exceeds the available terms");
  }
  parallel_for(xs.size(), 4096, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) out[i] = evaluate(spec, draw, xs[i], order);
  });
}

GraphSample make_graph_sample(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size()) throw ConfigError("graph sample: xs and ys differ in length");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) throw ConfigError("graph sample: xs must be strictly increasing");
  }
  GraphSample s;
  s.xs = std::move(xs);
  s.ys = std::move(ys);
  return s;
}

GraphSample sample_graph(const FunctionSpec& spec, const CoefficientDraw& draw, std::size_t m,
                         double tol) {
  if (m < 2) throw ConfigError("sample_graph needs m >= 2");
  const std::size_t n = truncation_order(spec, tol);
  if (n + 1 > draw.order) {
    throw PreconditionError("coefficient draw is shorter than the truncation order " +
                            std::to_string(n));
  }
  GraphSample s;
  s.truncation_order = n;
  s.tail_bound = spec.g().sup_abs * std::pow(spec.a(), static_cast<double>(n + 1)) / (1.0 - spec.a());
  s.xs.resize(m);
  const double denom = static_cast<double>(m - 1);
  for (std::size_t i = 0; i < m; ++i) s.xs[i] = static_cast<double>(i) / denom;
  s.ys.resize(m);
  evaluate_many(spec, draw, s.xs, n + 1, s.ys);
  return s;
}

DimensionPrediction dimension_formula(const FunctionSpec& spec) {
  DimensionPrediction d;
  d.value = 2.0 + std::log(spec.a()) / std::log(spec.b());
  if (!spec.flags().ab_gt1) {
    d.warning = "a*b <= 1: the graph is not expected to have dimension 2 + ln a / ln b";
  }
  return d;
}

}  // namespace wlab
