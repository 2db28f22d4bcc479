#include <gtest/gtest.h>

#include <algorithm>
#include <string>

#include "cli.hpp"
#include "tailkit/errors.hpp"

using namespace tailkit::cli;

namespace {

std::string data(const std::string& name) { return std::string(TAILKIT_TEST_DATA_DIR) + "/" + name; }

RunConfig rooted_triangle() {
  RunConfig c;
  c.command = Command::rooted;
  c.graph_path = data("triangle.txt");
  c.roots = {1};
  c.n = 6;
  c.p = 0.5;
  c.t = 2;
  c.exact = true;
  c.trials = 200;
  return c;
}

RunConfig ap12() {
  RunConfig c;
  c.command = Command::ap;
  c.k = 3;
  c.N = 12;
  c.p = 0.3;
  c.t = 2;
  c.exact = true;
  c.seed = 7;
  c.trials = 200;
  return c;
}

std::vector<std::string> keys(const nlohmann::ordered_json& j) {
  std::vector<std::string> out;
  for (const auto& [k, v] : j.items()) out.push_back(k);
  return out;
}

}  // namespace

TEST(Cli, ApReport) {
  const auto report = run(ap12());
  const auto& doc = report.document;
  EXPECT_EQ(keys(doc), (std::vector<std::string>{"inputs", "counts", "regime", "bounds",
                                                 "empirical", "exact", "verdict"}));
  EXPECT_EQ(doc["counts"]["edges"], 30);
  EXPECT_NEAR(doc["counts"]["mu"].get<double>(), 30 * 0.027, 1e-12);
  EXPECT_EQ(doc["bounds"]["certificate"]["construction"], "prefix");
  EXPECT_EQ(doc["verdict"]["status"], "PASS");
  EXPECT_EQ(doc["verdict"]["against"], "exact");
  EXPECT_FALSE(report.failed);
}

TEST(Cli, RootedReport) {
  const auto report = run(rooted_triangle());
  const auto& doc = report.document;
  EXPECT_EQ(doc["regime"]["name"], "b");
  EXPECT_NEAR(doc["counts"]["M"].get<double>(), 3.0, 1e-12);
  EXPECT_EQ(doc["counts"]["alpha_star"], "1");
  EXPECT_EQ(doc["counts"]["rooted_density"], "3/2");
  EXPECT_EQ(doc["counts"]["copies"], "10");
  EXPECT_EQ(doc["verdict"]["status"], "PASS");
}

TEST(Cli, ZeroProbabilityRendersSentinel) {
  auto c = rooted_triangle();
  c.p = 0.9;  // t p^3 > 1: regime d
  const auto report = run(c);
  EXPECT_EQ(report.document["regime"]["name"], "d");
  const std::string text = emit(report, Format::json);
  EXPECT_NE(text.find("\"tail\": 0,"), std::string::npos);
  EXPECT_NE(text.find("\"log_tail\": \"-inf\""), std::string::npos);
}

TEST(Cli, InfeasibleHypergraphIsRegimeD) {
  auto c = ap12();
  c.t = 100;
  const auto report = run(c);
  EXPECT_EQ(report.document["regime"]["name"], "d");
  EXPECT_EQ(report.document["exact"]["tail"], 0);
  EXPECT_TRUE(report.document["bounds"]["certificate"].is_null());
  EXPECT_FALSE(report.failed);
}

TEST(Cli, SweepCsvHasOneRowPerStep) {
  auto c = rooted_triangle();
  c.command = Command::sweep;
  c.inner = Command::rooted;
  c.trials = 0;
  c.exact.reset();
  const auto text = emit(run(c), Format::csv);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 20);
  EXPECT_EQ(text.substr(0, text.find('\n')), "p,t,regime,mu,M,lower_exponent_scale,"
                                              "upper_exponent_scale,lower_log_prob,"
                                              "upper_tail_bound,optimal_m,exact_tail,estimate");
  EXPECT_EQ(text.find("\n0.05,"), text.find('\n'));
}

TEST(Cli, LinearSweepEndpoints) {
  auto c = ap12();
  c.command = Command::sweep;
  c.inner = Command::ap;
  c.scale = Scale::linear;
  c.p_min = 0.2;
  c.p_max = 0.6;
  c.steps = 5;
  c.trials = 0;
  const auto report = run(c);
  ASSERT_EQ(report.rows.size(), 5u);
  EXPECT_EQ(report.rows.front()[0], "0.2");
  EXPECT_EQ(report.rows[2][0], "0.4");
  EXPECT_EQ(report.rows.back()[0], "0.6");
}

TEST(Cli, ByteDeterministic) {
  for (const auto& config : {ap12(), rooted_triangle()}) {
    EXPECT_EQ(emit(run(config), Format::json), emit(run(config), Format::json));
    EXPECT_EQ(emit(run(config), Format::csv), emit(run(config), Format::csv));
  }
}

TEST(Cli, RejectsInvalidConfigs) {
  auto c = ap12();
  c.t = 1.0;
  EXPECT_THROW(run(c), tailkit::ArgumentError);
  c = ap12();
  c.command = Command::sweep;
  c.inner = Command::ap;
  c.steps = 1;
  EXPECT_THROW(run(c), tailkit::ArgumentError);
  c = rooted_triangle();
  c.roots = {1, 2};
  EXPECT_THROW(run(c), tailkit::ValidationError);
  c = rooted_triangle();
  c.n = 9;
  c.exact = true;
  EXPECT_THROW(run(c), tailkit::CapacityError);
}

TEST(Cli, FormatNumber) {
  EXPECT_EQ(format_number(0.1 + 0.2), "0.3");
  EXPECT_EQ(format_number(1.0 / 3), "0.333333333333");
  EXPECT_EQ(format_number(-INFINITY), "-inf");
  EXPECT_EQ(format_number(0.0), "0");
}
