#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "wlab/io.hpp"
#include "wlab/rng.hpp"

using namespace wlab;

namespace {

double parse(const std::string& s) {
  double v = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

FunctionSpec figure_spec() { return build_spec(0.8, GeometricFrequencies{2.0}, {}, GFunction::cosine()); }

}  // namespace

TEST(FormatNumber, RoundTripsExactly) {
  const CounterStream rng(11);
  for (std::uint64_t i = 0; i < 10'000; ++i) {
    const double v = (rng.uniform(2 * i) - 0.5) * std::pow(10.0, 40.0 * rng.uniform(2 * i + 1) - 20.0);
    ASSERT_EQ(parse(format_number(v)), v);
  }
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(Csv, GraphLayout) {
  const auto s = make_graph_sample({0.0, 0.5, 1.0}, {1.0, -0.25, 1.0});
  std::ostringstream os;
  write_graph_csv(os, s);
  EXPECT_EQ(os.str(), "x,y\n0,1\n0.5,-0.25\n1,1\n");
}

TEST(Csv, MeasuresLayout) {
  const std::vector<double> m{0.25, 0.125};
  std::ostringstream os;
  write_measures_csv(os, m);
  EXPECT_EQ(os.str(), "n,measure\n0,0.25\n1,0.125\n");
}

TEST(Json, SpecKeysAndFlags) {
  const auto j = nlohmann::json::parse(spec_json(figure_spec()));
  EXPECT_EQ(j["a"], 0.8);
  EXPECT_EQ(j["b"], 2.0);
  EXPECT_EQ(j["frequencies"], "geometric");
  EXPECT_TRUE(j["flags"]["ab_gt1"].get<bool>());
  EXPECT_TRUE(j["flags"]["a2b_gt1"].get<bool>());
  EXPECT_NEAR(j["predicted_D"].get<double>(), 2.0 + std::log(0.8) / std::log(2.0), 1e-15);
}

TEST(Json, GraphIsDeterministic) {
  const auto spec = figure_spec();
  const auto draw = draw_coefficients(spec, 5, 80);
  const auto s = sample_graph(spec, draw, 17, 1e-6);
  const auto a = graph_json(spec, s, 5), b = graph_json(spec, sample_graph(spec, draw, 17, 1e-6), 5);
  EXPECT_EQ(a, b);
  const auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j["points"], 17);
  EXPECT_EQ(j["x"].size(), 17u);
  EXPECT_EQ(j["seed"], 5);
}

TEST(Json, NonFiniteBecomesNull) {
  ParsevalReport r;
  r.discrepancy = std::numeric_limits<double>::infinity();
  r.in_l2 = false;
  const auto j = nlohmann::json::parse(parseval_json(r));
  EXPECT_TRUE(j["discrepancy"].is_null());
  EXPECT_FALSE(j["in_l2"].get<bool>());
}
