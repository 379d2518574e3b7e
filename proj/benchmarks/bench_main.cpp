#include <benchmark/benchmark.h>

#include <vector>

#include "wlab/covering.hpp"
#include "wlab/dimension.hpp"
#include "wlab/occupation.hpp"
#include "wlab/series.hpp"

namespace {

wlab::FunctionSpec figure_spec(double b = 2.0) {
  return wlab::build_spec(0.8, wlab::GeometricFrequencies{b}, {}, wlab::GFunction::cosine());
}

void BM_Evaluate(benchmark::State& state) {
  const auto spec = figure_spec(state.range(0) == 0 ? 2.0 : 2.7);
  const std::size_t order = wlab::truncation_order(spec, 1e-9) + 1;
  const auto draw = wlab::draw_coefficients(spec, 1, order);
  double x = 0.123;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wlab::evaluate(spec, draw, x, order));
    x += 1e-7;
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(order));
}
BENCHMARK(BM_Evaluate)->Arg(0)->Arg(1);

void BM_SampleGraph(benchmark::State& state) {
  const auto spec = figure_spec();
  const auto draw = wlab::draw_coefficients(spec, 1, wlab::truncation_order(spec, 1e-6) + 1);
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wlab::sample_graph(spec, draw, m, 1e-6));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleGraph)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_BoxCount(benchmark::State& state) {
  const auto spec = figure_spec();
  const auto draw = wlab::draw_coefficients(spec, 1, wlab::truncation_order(spec, 1e-6) + 1);
  const auto sample = wlab::sample_graph(spec, draw, 1 << 20, 1e-6);
  const double eps = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wlab::box_count(sample, eps));
}
BENCHMARK(BM_BoxCount)->Arg(64)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_NearLevelSet(benchmark::State& state) {
  const auto g = wlab::GFunction::cosine();
  const auto m = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    if (state.range(0) == 0) {
      benchmark::DoNotOptimize(wlab::near_level_set(g, 0.05, m));
    } else {
      benchmark::DoNotOptimize(wlab::near_level_set_generic(g, 0.05, m));
    }
  }
}
BENCHMARK(BM_NearLevelSet)->Args({0, 2048})->Args({1, 2048})->Unit(benchmark::kMillisecond);

void BM_IteratedIntersection(benchmark::State& state) {
  const auto spec = figure_spec();
  const auto a = wlab::near_level_set(spec.g(), 0.05, 2048);
  const auto pairs = wlab::diagonal_phase_pairs(spec, 6);
  for (auto _ : state) benchmark::DoNotOptimize(wlab::iterated_intersection(a, spec, pairs, 6));
}
BENCHMARK(BM_IteratedIntersection)->Unit(benchmark::kMillisecond);

void BM_Energy(benchmark::State& state) {
  const auto spec = figure_spec();
  const auto draw = wlab::draw_coefficients(spec, 1, wlab::truncation_order(spec, 1e-9) + 1);
  for (auto _ : state) benchmark::DoNotOptimize(wlab::energy_estimate(spec, draw, 1.4, 100'000, 3));
  state.SetItemsProcessed(state.iterations() * 100'000);
}
BENCHMARK(BM_Energy)->Unit(benchmark::kMillisecond);

void BM_FourierTransform(benchmark::State& state) {
  const auto spec = figure_spec();
  const auto draw = wlab::draw_coefficients(spec, 1, wlab::truncation_order(spec, 1e-6) + 1);
  const auto sample = wlab::sample_graph(spec, draw, 1 << 18, 1e-6);
  const auto us = wlab::symmetric_u_grid(64.0, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(wlab::fourier_transform(sample, us));
}
BENCHMARK(BM_FourierTransform)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
