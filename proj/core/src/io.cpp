#include "wlab/io.hpp"

#include <charconv>
#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>

#include "json.hpp"

namespace wlab {

namespace {

using nlohmann::ordered_json;

ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

ordered_json number_array(std::span<const double> vs) {
  auto arr = ordered_json::array();
  for (const double v : vs) arr.push_back(number(v));
  return arr;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json spec_object(const FunctionSpec& spec) {
  ordered_json j;
  j["a"] = spec.a();
  j["b"] = spec.b();
  j["g"] = spec.g().name();
  if (spec.geometric()) {
    j["frequencies"] = "geometric";
  } else {
    j["frequencies"] = "explicit";
    j["b_seq"] = number_array(std::get<ExplicitFrequencies>(spec.freq_mode()).b_seq);
  }
  j["phases"] = number_array(spec.phases());
  j["flags"] = {{"ab_gt1", spec.flags().ab_gt1},
                {"a2b_gt1", spec.flags().a2b_gt1},
                {"b_integer_theta_zero", spec.flags().b_integer_theta_zero}};
  j["warnings"] = spec.warnings();
  const auto pred = dimension_formula(spec);
  j["predicted_D"] = number(pred.value);
  return j;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_graph_csv(std::ostream& os, const GraphSample& sample) {
  os << "x,y\n";
  for (std::size_t i = 0; i < sample.xs.size(); ++i) {
    os << format_number(sample.xs[i]) << ',' << format_number(sample.ys[i]) << '\n';
  }
}

void write_box_counts_csv(std::ostream& os, std::span<const DimensionEstimate> replicates) {
  os << "eps,count\n";
  if (replicates.empty()) return;
  const auto& scales = replicates.front().scales;
  for (std::size_t k = 0; k < scales.size(); ++k) {
    double sum = 0.0;
    for (const auto& r : replicates) sum += static_cast<double>(r.counts.at(k));
    os << format_number(scales[k]) << ',' << format_number(sum / static_cast<double>(replicates.size())) << '\n';
  }
}

void write_energy_scan_csv(std::ostream& os, std::span<const EnergyScanRow> rows) {
  os << "t,value,std_error,verdict\n";
  for (const auto& r : rows) {
    os << format_number(r.t) << ',' << format_number(r.estimate.value) << ','
       << format_number(r.estimate.std_error) << ',' << to_string(r.verdict) << '\n';
  }
}

void write_density_csv(std::ostream& os, const OccupationDensity& density) {
  os << "bin_center,density\n";
  for (std::size_t k = 0; k < density.weights.size(); ++k) {
    os << format_number(density.bin_center(k)) << ',' << format_number(density.weights[k]) << '\n';
  }
}

void write_fourier_csv(std::ostream& os, const FourierProfile& profile) {
  os << "u,re,im,abs2\n";
  for (std::size_t k = 0; k < profile.us.size(); ++k) {
    const auto v = profile.values[k];
    os << format_number(profile.us[k]) << ',' << format_number(v.real()) << ',' << format_number(v.imag())
       << ',' << format_number(std::norm(v)) << '\n';
  }
}

void write_measures_csv(std::ostream& os, std::span<const double> measures) {
  os << "n,measure\n";
  for (std::size_t n = 0; n < measures.size(); ++n) os << n << ',' << format_number(measures[n]) << '\n';
}

void write_pair_matrix_csv(std::ostream& os, const BSetsResult& result) {
  os << "n0";
  const std::size_t cols = result.pair_measures.empty() ? 0 : result.pair_measures.front().size();
  for (std::size_t c = 0; c < cols; ++c) os << ",n1_" << c;
  os << '\n';
  for (std::size_t r = 0; r < result.pair_measures.size(); ++r) {
    os << r;
    for (const double v : result.pair_measures[r]) os << ',' << format_number(v);
    os << '\n';
  }
}

void write_partial_sums_csv(std::ostream& os, const BSetsResult& result) {
  os << "n_max,partial_sum,increment,residual\n";
  for (std::size_t k = 0; k < result.partial_sums.size(); ++k) {
    os << k << ',' << format_number(result.partial_sums[k]) << ',' << format_number(result.increments[k])
       << ',' << format_number(result.residuals[k]) << '\n';
  }
}

void write_cover_profile_csv(std::ostream& os, std::span<const CoverPoint> profile) {
  os << "delta,count,count_delta,cover_measure\n";
  for (const auto& p : profile) {
    os << format_number(p.delta) << ',' << p.count << ',' << format_number(p.count_delta) << ','
       << format_number(p.cover_measure) << '\n';
  }
}

std::string spec_json(const FunctionSpec& spec) { return dump(spec_object(spec)); }

std::string graph_json(const FunctionSpec& spec, const GraphSample& sample, std::uint64_t seed) {
  ordered_json j;
  j["spec"] = spec_object(spec);
  j["seed"] = seed;
  j["truncation_order"] = sample.truncation_order;
  j["terms"] = sample.truncation_order + 1;
  j["tail_bound"] = number(sample.tail_bound);
  j["points"] = sample.xs.size();
  j["x"] = number_array(sample.xs);
  j["y"] = number_array(sample.ys);
  return dump(j);
}

std::string dimension_json(std::span<const DimensionEstimate> replicates, std::span<const std::uint64_t> seeds) {
  ordered_json j;
  double sum = 0.0, sumsq = 0.0;
  for (const auto& r : replicates) {
    sum += r.slope;
    sumsq += r.slope * r.slope;
  }
  const auto n = static_cast<double>(replicates.size());
  const double mean = n > 0 ? sum / n : std::numeric_limits<double>::quiet_NaN();
  j["slope"] = number(mean);
  j["slope_sd"] = n > 1 ? number(std::sqrt(std::max(0.0, (sumsq - sum * mean) / (n - 1.0)))) : ordered_json(nullptr);
  j["predicted_D"] = replicates.empty() ? ordered_json(nullptr) : number(replicates.front().predicted_D);
  j["scales"] = replicates.empty() ? ordered_json::array() : number_array(replicates.front().scales);
  auto arr = ordered_json::array();
  for (std::size_t k = 0; k < replicates.size(); ++k) {
    const auto& r = replicates[k];
    ordered_json e;
    if (k < seeds.size()) e["seed"] = seeds[k];
    e["slope"] = number(r.slope);
    e["intercept"] = number(r.intercept);
    e["r2"] = number(r.r2);
    e["counts"] = r.counts;
    arr.push_back(e);
  }
  j["replicates"] = arr;
  return dump(j);
}

std::string energy_scan_json(std::span<const EnergyScanRow> rows) {
  auto arr = ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"t", number(r.t)},
                   {"value", number(r.estimate.value)},
                   {"std_error", number(r.estimate.std_error)},
                   {"n_pairs", r.estimate.n_pairs},
                   {"seeds", r.seeds},
                   {"growth_exponent", number(r.growth_exponent)},
                   {"verdict", to_string(r.verdict)}});
  }
  return dump(ordered_json{{"rows", arr}});
}

std::string density_json(const OccupationDensity& density) {
  ordered_json j;
  j["lo"] = number(density.lo);
  j["hi"] = number(density.hi);
  j["bins"] = density.bins;
  j["binwidth"] = number(density.binwidth);
  j["l2_sq"] = number(density.l2_sq);
  j["degenerate"] = density.degenerate;
  j["weights"] = number_array(density.weights);
  return dump(j);
}

std::string parseval_json(const ParsevalReport& r) {
  ordered_json j;
  j["u_max"] = number(r.u_max);
  j["spacing"] = number(r.spacing);
  j["integral"] = number(r.integral);
  j["tail"] = number(r.tail);
  j["decay_exponent"] = number(r.decay_exponent);
  j["l2_sq"] = number(r.l2_sq);
  j["discrepancy"] = number(r.discrepancy);
  j["in_l2"] = r.in_l2;
  return dump(j);
}

std::string fact31_json(const Fact31Report& r) {
  ordered_json j;
  j["n0"] = r.n0;
  j["n1"] = r.n1;
  j["epsilon"] = number(r.epsilon);
  j["u"] = number(r.u);
  j["bound"] = number(r.bound);
  j["pairs_checked"] = r.pairs_checked;
  j["skipped"] = r.skipped;
  j["max_ratio"] = number(r.max_ratio);
  j["passed"] = r.passed;
  return dump(j);
}

std::string b_sets_json(const BSetsResult& r) {
  ordered_json j;
  j["n_max_requested"] = r.n_max_requested;
  j["n_max_used"] = r.n_max_used;
  j["capped"] = r.capped;
  auto first = ordered_json::array();
  for (const auto& s : r.first_hit) first.push_back(number(s.measure()));
  j["first_hit_measures"] = first;
  auto matrix = ordered_json::array();
  for (const auto& row : r.pair_measures) matrix.push_back(number_array(row));
  j["pair_measures"] = matrix;
  j["partial_sums"] = number_array(r.partial_sums);
  j["increments"] = number_array(r.increments);
  j["residuals"] = number_array(r.residuals);
  j["partial_sum"] = number(r.partial_sum);
  return dump(j);
}

std::string measures_json(std::span<const double> measures, const DecayFit& fit) {
  ordered_json j;
  j["measures"] = number_array(measures);
  j["rate"] = number(fit.rate);
  j["prefactor"] = number(fit.prefactor);
  j["r2"] = number(fit.r2);
  j["points_used"] = fit.points_used;
  j["truncated"] = fit.truncated;
  return dump(j);
}

}  // namespace wlab
