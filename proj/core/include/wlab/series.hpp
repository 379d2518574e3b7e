#pragma once

// Random Weierstrass-type series f(x) = sum_n a_n g(b_n x + theta_n) with
// independent amplitudes a_n ~ uniform(-a^n, a^n).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wlab {

enum class GKind { cosine, cosine_two_harmonic };

/// Built-in periodic base function g. Both members of the family have period
/// 1; `lipschitz` and `sup_abs` are numerical suprema of |g'| and |g| taken
/// by dense sampling when the function is constructed.
struct GFunction {
  GKind kind = GKind::cosine;
  double period = 1.0;
  double lipschitz = 0.0;
  double sup_abs = 0.0;

  /// cos(2 pi x)
  static GFunction cosine();
  /// cos(2 pi x) + cos(4 pi x) / 2
  static GFunction cosine_two_harmonic();
  /// "cos" or "cos2"; throws ConfigError otherwise.
  static GFunction from_name(std::string_view name);

  std::string name() const;
  double operator()(double x) const;
  double derivative(double x) const;
  /// g at `phase` periods, phase in [0, 1).
  double at_phase(double phase) const;
};

struct GeometricFrequencies {
  double b = 2.0;
};

/// Explicit frequencies b_0 = 1, b_1, ... with b_{n+1} / b_n >= b. When `b`
/// is not given it defaults to the smallest consecutive ratio.
struct ExplicitFrequencies {
  std::vector<double> b_seq;
  std::optional<double> b;
};

using FrequencyMode = std::variant<GeometricFrequencies, ExplicitFrequencies>;

/// One frequency b_n prepared for argument reduction. Integer frequencies
/// carry their residue modulo 2^128, which makes frac(b_n x) exact for every
/// double x above 2^-75.
struct Frequency {
  long double value = 1.0L;
  bool integral = false;
  unsigned __int128 residue = 0;

  /// frac(b_n * x) in [0, 1).
  double reduce(double x) const;
};

struct SpecFlags {
  bool ab_gt1 = false;
  bool a2b_gt1 = false;
  bool b_integer_theta_zero = false;
};

class FunctionSpec {
 public:
  double a() const { return a_; }
  /// Lower bound b on consecutive frequency ratios (the base in geometric mode).
  double b() const { return b_; }
  const FrequencyMode& freq_mode() const { return mode_; }
  bool geometric() const { return std::holds_alternative<GeometricFrequencies>(mode_); }
  const std::vector<double>& phases() const { return phases_; }
  const GFunction& g() const { return g_; }
  const SpecFlags& flags() const { return flags_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// theta_n; phases beyond the supplied list are 0.
  double theta(std::size_t n) const { return n < phases_.size() ? phases_[n] : 0.0; }
  /// theta_n reduced to [0, 1).
  double theta_unit(std::size_t n) const { return n < theta_unit_.size() ? theta_unit_[n] : 0.0; }
  const Frequency& frequency(std::size_t n) const { return freqs_.at(n); }
  long double b_n(std::size_t n) const { return freqs_.at(n).value; }
  /// Number of terms for which frequencies are available.
  std::size_t max_terms() const { return freqs_.size(); }

  /// g(b_n x + theta_n) with exact argument reduction where possible.
  double term(std::size_t n, double x) const;

 private:
  friend FunctionSpec build_spec(double, FrequencyMode, std::vector<double>, GFunction);

  double a_ = 0.5;
  double b_ = 2.0;
  FrequencyMode mode_;
  std::vector<double> phases_;
  std::vector<double> theta_unit_;
  GFunction g_;
  SpecFlags flags_;
  std::vector<std::string> warnings_;
  std::vector<Frequency> freqs_;
};

/// Frequency table length prepared in geometric mode (fewer when b^n overflows).
inline constexpr std::size_t kGeometricTableTerms = 4096;

/// Validates the parameters and computes the flags. ab <= 1 is a warning, not
/// an error, since the series is still well defined.
FunctionSpec build_spec(double a, FrequencyMode mode, std::vector<double> phases, GFunction g);

struct CoefficientDraw {
  std::uint64_t seed = 0;
  std::vector<double> values;
  std::size_t order = 0;
};

/// values[n] = a^n (2u_n - 1) with u_n the n-th position of the counter stream
/// keyed by `seed`, so every prefix is reproducible on its own.
CoefficientDraw draw_coefficients(const FunctionSpec& spec, std::uint64_t seed, std::size_t order);

/// All-zero draw (f == 0) with the given order.
CoefficientDraw zero_draw(std::size_t order);

/// Smallest n with 2 sup|g| a^{n+1} / (1 - a) <= tol: keeping terms 0..n
/// bounds the oscillation error of the tail by tol for every draw.
std::size_t truncation_order(const FunctionSpec& spec, double tol);

/// 1e-9 sup|g| / (1 - a).
double default_tolerance(const FunctionSpec& spec);

/// Partial sum over n < order.
double evaluate(const FunctionSpec& spec, const CoefficientDraw& draw, double x, std::size_t order);

/// evaluate() over many abscissae, in parallel.
void evaluate_many(const FunctionSpec& spec, const CoefficientDraw& draw, std::span<const double> xs,
                   std::size_t order, std::span<double> out);

struct GraphSample {
  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t truncation_order = 0;
  /// Guaranteed bound on |f - f_truncated| at every x.
  double tail_bound = 0.0;
};

/// Wraps arbitrary samples (test functions such as f(x) = x). xs must be
/// strictly increasing and the same length as ys.
GraphSample make_graph_sample(std::vector<double> xs, std::vector<double> ys);

/// m equally spaced points on [0, 1]; sums terms 0..truncation_order(spec, tol).
GraphSample sample_graph(const FunctionSpec& spec, const CoefficientDraw& draw, std::size_t m,
                         double tol);

struct DimensionPrediction {
  double value = 0.0;
  std::optional<std::string> warning;
};

/// D = 2 + ln a / ln b.
DimensionPrediction dimension_formula(const FunctionSpec& spec);

}  // namespace wlab
