#include "wlab/verify/criteria.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "wlab/covering.hpp"
#include "wlab/dimension.hpp"
#include "wlab/occupation.hpp"
#include "wlab/rng.hpp"
#include "wlab/series.hpp"
#include "wlab/verify/oracles.hpp"

namespace wlab::verify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

struct Outcome {
  bool passed = false;
  std::string detail;
};

FunctionSpec cosine_spec(double a, double b) { return build_spec(a, GeometricFrequencies{b}, {}, GFunction::cosine()); }

// 1. Box-counting slope against D = 2 + log a / log b.
Outcome dimension_case(double a, double b, std::uint64_t seed, std::ostringstream& detail) {
  const auto start = Clock::now();
  const FunctionSpec spec = cosine_spec(a, b);
  const double tol = 1e-6;
  const std::size_t order = truncation_order(spec, tol) + 1;
  const auto scales = dyadic_scales(6, 12);
  double sum = 0.0;
  constexpr int kSeeds = 8;
  for (int k = 0; k < kSeeds; ++k) {
    const CoefficientDraw draw = draw_coefficients(spec, derive_seed(seed, static_cast<std::uint64_t>(k)), order);
    const GraphSample sample = sample_graph(spec, draw, std::size_t{1} << 20, tol);
    sum += box_dimension_estimate(spec, sample, scales).slope;
  }
  const double slope = sum / kSeeds;
  const double predicted = dimension_formula(spec).value;
  const double elapsed = seconds_since(start);
  const bool ok = std::fabs(slope - predicted) <= 0.10 && elapsed <= 60.0;
  detail << "(a,b)=(" << a << "," << b << ") slope " << fmt(slope) << " vs D " << fmt(predicted);
  if (elapsed > 60.0) detail << " over the 60 s budget";
  detail << "; ";
  return {ok, ""};
}

Outcome criterion_dimension(std::uint64_t seed) {
  std::ostringstream detail;
  const Outcome first = dimension_case(0.8, 2.0, derive_seed(seed, "c1-a"), detail);
  const Outcome second = dimension_case(0.5, 3.0, derive_seed(seed, "c1-b"), detail);
  return {first.passed && second.passed, detail.str()};
}

// 2. Measures of the iterated intersections decay strictly, at rate <= 0.65.
Outcome criterion_covering(std::uint64_t) {
  const auto start = Clock::now();
  const FunctionSpec spec = cosine_spec(0.8, 2.0);
  const GridSet a_set = near_level_set(spec.g(), 0.05, 2048);
  const auto phases = diagonal_phase_pairs(spec, 6);
  const auto measures = intersection_measures(a_set, spec, phases, 6);
  bool decreasing = true;
  for (std::size_t n = 1; n < measures.size(); ++n) decreasing = decreasing && measures[n] < measures[n - 1];
  const DecayFit fit = decay_fit(measures);
  const double elapsed = seconds_since(start);
  std::ostringstream d;
  d << "measures";
  for (const double m : measures) d << ' ' << fmt(m, 3);
  d << "; strictly decreasing " << (decreasing ? "yes" : "no") << "; rate " << fmt(fit.rate) << " (<= 0.65)";
  if (elapsed > 30.0) d << "; over the 30 s budget";
  return {decreasing && !fit.truncated && fit.rate <= 0.65 && elapsed <= 30.0, d.str()};
}

// 3. integer_b mode gives gamma = N delta^2 exactly.
Outcome criterion_remark(std::uint64_t seed) {
  const auto start = Clock::now();
  const CounterStream rng(derive_seed(seed, "c3"));
  std::size_t mismatches = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(3 * k) * 1000.0);
    const double delta = rng.uniform_open(3 * k + 1);
    const double b = 2.0 + std::floor(rng.uniform(3 * k + 2) * 9.0);
    const CoverParams p = gamma_bound(n, delta, b, GammaMode::integer_b);
    if (p.gamma != static_cast<double>(n) * delta * delta || p.k != 1) ++mismatches;
  }
  const double elapsed = seconds_since(start);
  std::ostringstream d;
  d << mismatches << " of 100 inputs differ from N*delta^2";
  if (elapsed > 1.0) d << "; over the 1 s budget";
  return {mismatches == 0 && elapsed <= 1.0, d.str()};
}

// 4. f = 0 gives E|x - y|^{-1/2} = 8/3.
Outcome criterion_energy_oracle(std::uint64_t seed) {
  const auto start = Clock::now();
  const EnergyEstimate e = energy_estimate([](double) { return 0.0; }, 0.5, 1'000'000, derive_seed(seed, "c4"));
  const double expected = energy_zero_closed_form(0.5);
  const double z = std::fabs(e.value - expected) / e.std_error;
  const double elapsed = seconds_since(start);
  std::ostringstream d;
  d << "I_0.5 " << fmt(e.value, 6) << " +- " << fmt(e.std_error, 3) << " vs " << fmt(expected, 6) << " (" << fmt(z, 3)
    << " se)";
  if (elapsed > 10.0) d << "; over the 10 s budget";
  return {z <= 3.0 && elapsed <= 10.0, d.str()};
}

// 5. Energy scan verdicts below and above the dimension.
Outcome criterion_energy_scan(std::uint64_t seed) {
  const FunctionSpec spec = cosine_spec(0.8, 2.0);
  const std::vector<double> ts{1.2, 1.4, 1.6, 1.9};
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t k = 0; k < 8; ++k) seeds.push_back(derive_seed(derive_seed(seed, "c5"), k));
  const auto rows = energy_threshold_scan(spec, ts, 1'000'000, seeds, 1e-6);
  std::ostringstream d;
  for (const auto& r : rows) d << "t=" << r.t << " growth " << fmt(r.growth_exponent, 3) << ' ' << to_string(r.verdict) << "; ";
  const bool ok = rows[0].verdict == EnergyVerdict::stable && rows[1].verdict == EnergyVerdict::stable &&
                  rows[3].verdict == EnergyVerdict::diverging;
  return {ok, d.str()};
}

// 6. l2_sq stable under bin refinement, for each of four seeds.
Outcome criterion_l2_density(std::uint64_t seed) {
  const FunctionSpec spec = cosine_spec(0.8, 2.0);
  const double tol = 1e-6;
  const std::size_t order = truncation_order(spec, tol) + 1;
  bool ok = true;
  std::ostringstream d;
  double lo = 1e300, hi = 0.0;
  for (std::uint64_t k = 0; k < 4; ++k) {
    const CoefficientDraw draw = draw_coefficients(spec, derive_seed(derive_seed(seed, "c6"), k), order);
    const GraphSample sample = sample_graph(spec, draw, 1'000'000, tol);
    const double l256 = occupation_histogram(sample, 256).l2_sq;
    const double l512 = occupation_histogram(sample, 512).l2_sq;
    const double change = std::fabs(l512 - l256) / l256;
    ok = ok && change < 0.05;
    lo = std::min(lo, l512);
    hi = std::max(hi, l512);
    d << "seed " << k << ": " << fmt(l256) << " -> " << fmt(l512) << " (" << fmt(100 * change, 2) << "%); ";
  }
  d << "l2_sq range over seeds " << fmt(lo) << ".." << fmt(hi);
  return {ok, d.str()};
}

ParsevalReport parseval_at(const GraphSample& sample, double u_max) {
  const OccupationDensity density = occupation_histogram(sample, 256);
  const auto us = symmetric_u_grid(u_max, std::numbers::pi / (density.hi - density.lo));
  return parseval_check(density, fourier_transform(sample, us), u_max);
}

// 7. Parseval for f(x) = x and for a Weierstrass draw.
Outcome criterion_parseval(std::uint64_t seed) {
  std::ostringstream d;
  const std::size_t m = 1'000'000;
  std::vector<double> xs(m);
  for (std::size_t i = 0; i < m; ++i) xs[i] = static_cast<double>(i) / static_cast<double>(m - 1);
  const GraphSample line = make_graph_sample(xs, xs);
  const ParsevalReport lr = parseval_at(line, 200.0);
  // Closed form: |mu_hat|^2 = sinc^2(u/2), density 1 on [0,1], l2 = 1.
  const double closed = parseval_identity_truncated(200.0);
  const double closed_gap = std::fabs(lr.integral - closed) / closed;
  const bool line_ok = lr.discrepancy < 0.01 && closed_gap < 0.01;
  d << "f=x: discrepancy " << fmt(100 * lr.discrepancy, 3) << "%, integral vs closed form " << fmt(100 * closed_gap, 3)
    << "%; ";

  const FunctionSpec spec = cosine_spec(0.8, 2.0);
  const double tol = 1e-6;
  const CoefficientDraw draw = draw_coefficients(spec, derive_seed(seed, "c7"), truncation_order(spec, tol) + 1);
  const GraphSample sample = sample_graph(spec, draw, std::size_t{1} << 20, tol);
  const auto u_max = adaptive_u_max(sample);
  bool w_ok = false;
  if (u_max) {
    const ParsevalReport wr = parseval_at(sample, *u_max);
    w_ok = wr.in_l2 && wr.discrepancy < 0.10;
    d << "Weierstrass: u_max " << *u_max << ", integral " << fmt(wr.integral) << " + tail " << fmt(wr.tail, 3)
      << " vs l2_sq " << fmt(wr.l2_sq) << ", discrepancy " << fmt(100 * wr.discrepancy, 3) << "%";
  } else {
    d << "Weierstrass: no u_max below the limit";
  }
  return {line_ok && w_ok, d.str()};
}

struct SincTuple {
  FunctionSpec spec;
  double x, y, u;
};

SincTuple random_tuple(const CounterStream& rng, std::uint64_t k) {
  const std::uint64_t c = 16 * k;
  const double a = 0.5 + 0.4 * rng.uniform(c);
  const double b = 1.5 + 2.5 * rng.uniform(c + 1);
  const GFunction g = rng.uniform(c + 2) < 0.5 ? GFunction::cosine() : GFunction::cosine_two_harmonic();
  std::vector<double> phases(8);
  for (std::size_t n = 0; n < phases.size(); ++n) phases[n] = rng.uniform(c + 3 + n);
  return {build_spec(a, GeometricFrequencies{b}, phases, g), rng.uniform(c + 11), rng.uniform(c + 12),
          1.0 + 29.0 * rng.uniform(c + 13)};
}

bool sinc_agrees(const SincTuple& t, std::uint64_t seed) {
  constexpr std::size_t kOrder = 10;
  const double product = sinc_product(t.spec, t.x, t.y, t.u, kOrder).product;
  const OmegaAverage mc = omega_average_mc(t.spec, t.x, t.y, t.u, 50'000, seed, kOrder);
  return std::fabs(mc.mean_real - product) <= 4.0 * mc.std_error;
}

// 8. Monte Carlo average of exp(iu(f(x)-f(y))) against the sinc product.
Outcome criterion_sinc(std::uint64_t seed) {
  const CounterStream rng(derive_seed(seed, "c8"));
  std::size_t failures = 0, rerun_failures = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const SincTuple t = random_tuple(rng, k);
    if (sinc_agrees(t, derive_seed(derive_seed(seed, "c8-draws"), k))) continue;
    ++failures;
    if (!sinc_agrees(t, derive_seed(derive_seed(seed, "c8-rerun"), k))) ++rerun_failures;
  }
  std::ostringstream d;
  d << failures << " of 100 tuples outside 4 se, " << rerun_failures << " still outside on rerun";
  return {failures <= 2 && rerun_failures == 0, d.str()};
}

// 9. Increments of the B-set double series shrink from n_max = 4 to 8.
Outcome criterion_series(std::uint64_t) {
  const FunctionSpec spec = cosine_spec(0.8, 2.0);
  const BSetsResult r = b_sets(spec, 0.05, 8, 2048);
  bool ok = r.n_max_used == 8;
  for (std::size_t k = 5; ok && k <= 8; ++k) ok = r.increments[k] < r.increments[k - 1];
  std::ostringstream d;
  d << "increments n=4..8:";
  for (std::size_t k = 4; k < r.increments.size(); ++k) d << ' ' << fmt(r.increments[k], 3);
  d << "; partial sum " << fmt(r.partial_sum) << ", residual " << fmt(r.residuals.back(), 3);
  return {ok, d.str()};
}

// 10. Fast paths against brute-force oracles.
Outcome criterion_oracles(std::uint64_t seed) {
  const CounterStream rng(derive_seed(seed, "c10"));
  std::size_t box_checks = 0, box_mismatches = 0;
  for (std::uint64_t k = 0; k < 20; ++k) {
    const CounterStream srng(derive_seed(derive_seed(seed, "c10-sample"), k));
    const auto m = static_cast<std::size_t>(500 + 9500 * rng.uniform(4 * k));
    const double x0 = 0.3 * rng.uniform(4 * k + 1);
    const double h = (0.2 + rng.uniform(4 * k + 2)) / static_cast<double>(m);
    const double step = 0.002 + 0.05 * rng.uniform(4 * k + 3);
    std::vector<double> xs(m), ys(m);
    double y = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      xs[i] = x0 + h * static_cast<double>(i);
      ys[i] = y;
      y += step * (2.0 * srng.uniform(i) - 1.0);
    }
    const GraphSample sample = make_graph_sample(std::move(xs), std::move(ys));
    const double spacing = (sample.xs.back() - sample.xs.front()) / static_cast<double>(m - 1);
    for (const double factor : {8.5, 13.0, 31.7, 80.0}) {
      const double eps = factor * spacing;
      ++box_checks;
      if (box_count(sample, eps) != box_count_bruteforce(sample, eps)) ++box_mismatches;
    }
  }
  std::size_t level_failures = 0;
  const GFunction g = GFunction::cosine();
  const std::vector<double> epsilons{0.01, 0.05, 0.2, 0.5, 1.0, 1.7};
  for (const double eps : epsilons) {
    const GridSet fast = near_level_set_cosine(eps, 256);
    const GridSet generic = near_level_set_generic(g, eps, 256);
    if (!generic.is_subset_of(fast) || !fast.is_subset_of(generic.dilated())) ++level_failures;
  }
  std::ostringstream d;
  d << "box_count: " << box_mismatches << " mismatches in " << box_checks << " checks on 20 samples; near_level_set: "
    << level_failures << " of " << epsilons.size() << " epsilons outside the fringe";
  return {box_mismatches == 0 && level_failures == 0, d.str()};
}

}  // namespace

std::string criterion_title(int id) {
  switch (id) {
    case 1: return "dimension reproduction";
    case 2: return "covering decay";
    case 3: return "integer-b gamma reduction";
    case 4: return "energy closed-form oracle";
    case 5: return "energy threshold behavior";
    case 6: return "L2 occupation density";
    case 7: return "Parseval";
    case 8: return "sinc identity";
    case 9: return "series convergence";
    case 10: return "oracle equivalence";
    default: return "unknown";
  }
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  CriterionResult r;
  r.id = id;
  r.title = criterion_title(id);
  const auto start = Clock::now();
  const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(id));
  try {
    Outcome o;
    switch (id) {
      case 1: o = criterion_dimension(s); break;
      case 2: o = criterion_covering(s); break;
      case 3: o = criterion_remark(s); break;
      case 4: o = criterion_energy_oracle(s); break;
      case 5: o = criterion_energy_scan(s); break;
      case 6: o = criterion_l2_density(s); break;
      case 7: o = criterion_parseval(s); break;
      case 8: o = criterion_sinc(s); break;
      case 9: o = criterion_series(s); break;
      case 10: o = criterion_oracles(s); break;
      default: o = {false, "no such criterion"}; break;
    }
    r.passed = o.passed;
    r.detail = o.detail;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = seconds_since(start);
  return r;
}

std::vector<CriterionResult> run_criteria(std::span<const int> ids, std::uint64_t seed) {
  std::vector<int> todo(ids.begin(), ids.end());
  if (todo.empty()) {
    for (int id = 1; id <= kCriterionCount; ++id) todo.push_back(id);
  }
  std::vector<CriterionResult> out;
  for (const int id : todo) out.push_back(run_criterion(id, seed));
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << "  " << r.title << ": " << r.detail << "  ("
     << std::fixed << std::setprecision(2) << r.seconds << " s)";
  return os.str();
}

std::string results_json(std::span<const CriterionResult> results, std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["profile"] = "desk";
  j["seed"] = seed;
  j["passed"] = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    arr.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
  }
  j["criteria"] = arr;
  return j.dump(2) + "\n";
}

}  // namespace wlab::verify
