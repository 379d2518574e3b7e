// wlab: generate random Weierstrass-type functions and run the dimension,
// energy, occupation and covering experiments from the command line.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wlab/covering.hpp"
#include "wlab/dimension.hpp"
#include "wlab/errors.hpp"
#include "wlab/io.hpp"
#include "wlab/occupation.hpp"
#include "wlab/parallel.hpp"
#include "wlab/rng.hpp"
#include "wlab/series.hpp"
#include "wlab/verify/criteria.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitPrecondition = 3;

struct Common {
  double a = 0.8;
  std::optional<double> b;
  std::vector<double> b_seq;
  std::vector<double> phases;
  std::string g = "cos";
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  std::string out;
  std::string format;
  std::optional<double> tol;
};

wlab::FunctionSpec make_spec(const Common& c) {
  wlab::GFunction g = wlab::GFunction::from_name(c.g);
  if (!c.b_seq.empty()) return wlab::build_spec(c.a, wlab::ExplicitFrequencies{c.b_seq, c.b}, c.phases, g);
  return wlab::build_spec(c.a, wlab::GeometricFrequencies{c.b.value_or(2.0)}, c.phases, g);
}

double tolerance(const Common& c, const wlab::FunctionSpec& spec) {
  return c.tol.value_or(wlab::default_tolerance(spec));
}

// Artifacts go to files under --out; without it the artifact matching
// --format is written to stdout.
class Sink {
 public:
  Sink(const Common& c, std::string default_format) : out_(c.out), format_(c.format.empty() ? default_format : c.format) {
    if (format_ != "csv" && format_ != "json") throw wlab::ConfigError("--format must be csv or json");
    if (!out_.empty()) fs::create_directories(out_);
  }

  void emit(const std::string& name, const std::string& format, const std::function<void(std::ostream&)>& write,
            bool primary = true) {
    if (out_.empty()) {
      if (primary && format == format_ && !written_) {
        write(std::cout);
        written_ = true;
      }
      return;
    }
    const fs::path path = fs::path(out_) / name;
    std::ofstream file(path, std::ios::binary);
    if (!file) throw wlab::ConfigError("cannot write " + path.string());
    write(file);
  }

  void emit_text(const std::string& name, const std::string& format, const std::string& text, bool primary = true) {
    emit(name, format, [&](std::ostream& os) { os << text; }, primary);
  }

  bool to_files() const { return !out_.empty(); }

 private:
  std::string out_;
  std::string format_;
  bool written_ = false;
};

void warn(const wlab::FunctionSpec& spec) {
  for (const auto& w : spec.warnings()) std::cerr << "warning: " << w << '\n';
}

int run_gen(const Common& c, std::size_t points) {
  const auto spec = make_spec(c);
  warn(spec);
  const double tol = tolerance(c, spec);
  const auto draw = wlab::draw_coefficients(spec, c.seed, wlab::truncation_order(spec, tol) + 1);
  const auto sample = wlab::sample_graph(spec, draw, points, tol);
  Sink sink(c, "csv");
  sink.emit("graph.csv", "csv", [&](std::ostream& os) { wlab::write_graph_csv(os, sample); });
  sink.emit_text("graph.json", "json", wlab::graph_json(spec, sample, c.seed));
  return 0;
}

int run_boxdim(const Common& c, std::size_t points, std::size_t seeds, int k_lo, int k_hi) {
  const auto spec = make_spec(c);
  warn(spec);
  if (seeds < 1) throw wlab::ConfigError("--seeds must be >= 1");
  const double tol = tolerance(c, spec);
  const std::size_t order = wlab::truncation_order(spec, tol) + 1;
  const auto scales = wlab::dyadic_scales(k_lo, k_hi);
  std::vector<wlab::DimensionEstimate> reps;
  std::vector<std::uint64_t> rep_seeds;
  for (std::size_t k = 0; k < seeds; ++k) {
    const std::uint64_t s = wlab::derive_seed(c.seed, static_cast<std::uint64_t>(k));
    const auto draw = wlab::draw_coefficients(spec, s, order);
    reps.push_back(wlab::box_dimension_estimate(spec, wlab::sample_graph(spec, draw, points, tol), scales));
    rep_seeds.push_back(s);
  }
  Sink sink(c, "json");
  sink.emit_text("dimension.json", "json", wlab::dimension_json(reps, rep_seeds));
  sink.emit("box_counts.csv", "csv", [&](std::ostream& os) { wlab::write_box_counts_csv(os, reps); });
  return 0;
}

int run_energy(const Common& c, const std::vector<double>& ts, std::size_t pairs, std::size_t seeds) {
  const auto spec = make_spec(c);
  warn(spec);
  if (seeds < 5) std::cerr << "note: verdicts use the median over seeds; fewer than 5 seeds make them fragile\n";
  std::vector<std::uint64_t> rep_seeds;
  for (std::size_t k = 0; k < seeds; ++k) rep_seeds.push_back(wlab::derive_seed(c.seed, static_cast<std::uint64_t>(k)));
  const auto rows = wlab::energy_threshold_scan(spec, ts, pairs, rep_seeds, c.tol.value_or(1e-6));
  Sink sink(c, "csv");
  sink.emit("energy.csv", "csv", [&](std::ostream& os) { wlab::write_energy_scan_csv(os, rows); });
  sink.emit_text("energy.json", "json", wlab::energy_scan_json(rows));
  return 0;
}

struct OccOptions {
  std::size_t points = 1'000'000;
  std::size_t bins = 256;
  std::optional<double> u_max;
  bool fact31 = false;
  double epsilon = 0.05;
  std::size_t n0 = 0;
  std::size_t n1 = 1;
  double u = 100.0;
  std::size_t resolution = 512;
  std::size_t fact31_pairs = 2000;
};

int run_occ(const Common& c, const OccOptions& o) {
  const auto spec = make_spec(c);
  warn(spec);
  const double tol = tolerance(c, spec);
  const auto draw = wlab::draw_coefficients(spec, c.seed, wlab::truncation_order(spec, tol) + 1);
  const auto sample = wlab::sample_graph(spec, draw, o.points, tol);
  const auto density = wlab::occupation_histogram(sample, o.bins);
  double u_max = 0.0;
  if (o.u_max) {
    u_max = *o.u_max;
  } else {
    const auto adaptive = wlab::adaptive_u_max(sample);
    if (!adaptive) throw wlab::PreconditionError("|mu_hat|^2 does not fall below the threshold; pass --u-max");
    u_max = *adaptive;
  }
  const auto us = wlab::symmetric_u_grid(u_max, std::numbers::pi / (density.hi - density.lo));
  const auto profile = wlab::fourier_transform(sample, us);
  const auto report = wlab::parseval_check(density, profile, u_max);

  Sink sink(c, "csv");
  sink.emit("density.csv", "csv", [&](std::ostream& os) { wlab::write_density_csv(os, density); });
  sink.emit_text("parseval.json", "json", wlab::parseval_json(report));
  sink.emit("fourier.csv", "csv", [&](std::ostream& os) { wlab::write_fourier_csv(os, profile); }, false);
  sink.emit_text("density.json", "json", wlab::density_json(density), false);
  if (o.fact31) {
    const std::size_t order = wlab::truncation_order(spec, tol) + 1;
    const auto region = wlab::fact31_region(spec, o.epsilon, o.n0, o.n1, o.resolution);
    const auto f31 = wlab::fact31_bound_check(spec, o.epsilon, o.u, o.n0, o.n1, region, o.fact31_pairs,
                                              wlab::derive_seed(c.seed, "fact31"), order);
    sink.emit_text("fact31.json", "json", wlab::fact31_json(f31), false);
    if (!sink.to_files()) std::cerr << wlab::fact31_json(f31);
  }
  if (!report.in_l2) std::cerr << "note: Fourier decay too slow for an L2 density at this u_max\n";
  return 0;
}

int run_cover(const Common& c, double epsilon, std::size_t resolution, std::size_t n, std::size_t bsets_n,
              bool bitmaps) {
  const auto spec = make_spec(c);
  warn(spec);
  const auto a_set = wlab::near_level_set(spec.g(), epsilon, resolution);
  const auto phases = wlab::diagonal_phase_pairs(spec, n);
  const auto measures = wlab::intersection_measures(a_set, spec, phases, n);
  const auto fit = wlab::decay_fit(measures);
  const auto bs = wlab::b_sets(spec, epsilon, bsets_n, resolution);

  Sink sink(c, "csv");
  sink.emit("measures.csv", "csv", [&](std::ostream& os) { wlab::write_measures_csv(os, measures); });
  sink.emit_text("measures.json", "json", wlab::measures_json(measures, fit));
  sink.emit("b_sets_matrix.csv", "csv", [&](std::ostream& os) { wlab::write_pair_matrix_csv(os, bs); }, false);
  sink.emit("b_sets_partial_sums.csv", "csv", [&](std::ostream& os) { wlab::write_partial_sums_csv(os, bs); }, false);
  sink.emit_text("b_sets.json", "json", wlab::b_sets_json(bs), false);
  if (bitmaps && sink.to_files()) {
    for (std::size_t k = 0; k <= n; ++k) {
      const auto set = wlab::iterated_intersection(a_set, spec, phases, k);
      sink.emit("A_" + std::to_string(k) + ".pbm", "pbm", [&](std::ostream& os) { set.write_pbm(os); }, false);
    }
  }
  return 0;
}

int run_verify(const Common& c, const std::string& profile, const std::vector<int>& only) {
  if (profile != "desk") throw wlab::ConfigError("--profile must be desk");
  for (const int id : only) {
    if (id < 1 || id > wlab::verify::kCriterionCount) throw wlab::ConfigError("--only ids must lie in 1..10");
  }
  std::vector<wlab::verify::CriterionResult> results;
  const bool json = c.format == "json";
  for (const int id : only.empty() ? std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10} : only) {
    results.push_back(wlab::verify::run_criterion(id, c.seed));
    (json ? std::cerr : std::cout) << wlab::verify::format_line(results.back()) << std::endl;
  }
  const std::string doc = wlab::verify::results_json(results, c.seed);
  if (json) std::cout << doc;
  if (!c.out.empty()) {
    fs::create_directories(c.out);
    std::ofstream(fs::path(c.out) / "verify.json", std::ios::binary) << doc;
  }
  for (const auto& r : results) {
    if (!r.passed) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random Weierstrass-type functions: generation, dimension, energy, occupation and covering"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file; keys are long option names, [section] per subcommand");
  app.allow_config_extras(CLI::config_extras_mode::error);

  Common c;
  c.seed = 1;
  app.add_option("--a", c.a, "amplitude ratio a in (0,1)");
  app.add_option("--b", c.b, "frequency ratio b > 1 (lower bound on ratios with --b-seq)");
  app.add_option("--b-seq", c.b_seq, "explicit frequencies b_0 = 1, b_1, ...")->delimiter(',');
  app.add_option("--phases", c.phases, "phases theta_0, theta_1, ... (others are 0)")->delimiter(',');
  app.add_option("--g", c.g, "base function")->check(CLI::IsMember({"cos", "cos2"}));
  app.add_option("--seed", c.seed, "master seed");
  app.add_option("--threads", c.threads, "worker cap (default: WLAB_THREADS, then all cores)");
  app.add_option("--out", c.out, "output directory (default: primary artifact to stdout)");
  app.add_option("--format", c.format, "stdout format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", c.tol, "truncation tolerance");

  std::size_t gen_points = 4096;
  auto* gen = app.add_subcommand("gen", "sample the graph of one draw");
  gen->add_option("--points", gen_points, "number of equally spaced points on [0,1]");

  std::size_t bd_points = std::size_t{1} << 20, bd_seeds = 8;
  int k_lo = 6, k_hi = 12;
  auto* boxdim = app.add_subcommand("boxdim", "box-counting dimension over replicate draws");
  boxdim->add_option("--points", bd_points, "graph points per draw");
  boxdim->add_option("--seeds", bd_seeds, "replicate draws");
  boxdim->add_option("--kmin", k_lo, "coarsest scale 2^-kmin");
  boxdim->add_option("--kmax", k_hi, "finest scale 2^-kmax");

  std::vector<double> ts{1.2, 1.4, 1.6, 1.9};
  std::size_t e_pairs = 1'000'000, e_seeds = 8;
  auto* energy = app.add_subcommand("energy", "t-energy scan with stable/diverging verdicts");
  energy->add_option("--t", ts, "exponents in (1,2)")->delimiter(',');
  energy->add_option("--pairs", e_pairs, "pairs per seed");
  energy->add_option("--seeds", e_seeds, "replicate draws");

  OccOptions occ_opt;
  auto* occ = app.add_subcommand("occ", "occupation density, Fourier transform and Parseval check");
  occ->add_option("--points", occ_opt.points, "graph points");
  occ->add_option("--bins", occ_opt.bins, "histogram bins");
  occ->add_option("--u-max", occ_opt.u_max, "Fourier cutoff (default: adaptive)");
  occ->add_flag("--fact31", occ_opt.fact31, "also check the sinc-product bound on A_n0 and A_n1");
  occ->add_option("--eps", occ_opt.epsilon, "level gap for --fact31");
  occ->add_option("--n0", occ_opt.n0, "first index for --fact31");
  occ->add_option("--n1", occ_opt.n1, "second index for --fact31");
  occ->add_option("--u", occ_opt.u, "frequency for --fact31");
  occ->add_option("--resolution", occ_opt.resolution, "grid for --fact31");
  occ->add_option("--fact31-pairs", occ_opt.fact31_pairs, "sampled cells for --fact31");

  double cov_eps = 0.05;
  std::size_t cov_res = 2048, cov_n = 6, cov_bn = 8;
  bool cov_pbm = false;
  auto* cover = app.add_subcommand("cover", "near-level sets, iterated intersections and B-sets");
  cover->add_option("--eps", cov_eps, "level threshold epsilon");
  cover->add_option("--resolution", cov_res, "grid size M");
  cover->add_option("--n", cov_n, "iterations of the scaled intersection");
  cover->add_option("--bsets-n", cov_bn, "n_max for the B-set decomposition");
  cover->add_flag("--pbm", cov_pbm, "write A_n.pbm bitmaps (needs --out)");

  std::string profile = "desk";
  std::vector<int> only;
  auto* verify = app.add_subcommand("verify-all", "run the acceptance criteria");
  verify->add_option("--profile", profile, "problem sizes")->check(CLI::IsMember({"desk"}));
  verify->add_option("--only", only, "criterion ids")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (c.threads > 0) wlab::set_thread_count(c.threads);
    if (verify->parsed()) {
      if (!app.get_option("--seed")->count()) c.seed = wlab::verify::kDefaultSeed;
      return run_verify(c, profile, only);
    }
    if (gen->parsed()) return run_gen(c, gen_points);
    if (boxdim->parsed()) return run_boxdim(c, bd_points, bd_seeds, k_lo, k_hi);
    if (energy->parsed()) return run_energy(c, ts, e_pairs, e_seeds);
    if (occ->parsed()) return run_occ(c, occ_opt);
    if (cover->parsed()) return run_cover(c, cov_eps, cov_res, cov_n, cov_bn, cov_pbm);
  } catch (const wlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const wlab::PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return EXIT_FAILURE;
  }
  return kExitConfig;
}
