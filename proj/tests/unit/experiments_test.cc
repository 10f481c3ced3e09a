// Copyright 2026 The infalpha Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================
#include "infalpha/experiments.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "infalpha/bounds.h"
#include "infalpha/errors.h"

namespace infalpha {
namespace {

using nlohmann::json;

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("infalpha_" + name)).string();
}

json plugin_config(json pmf, std::vector<std::size_t> grid, std::size_t trials) {
  return {{"pmf", pmf},
          {"estimator", {{"kind", "plugin"}}},
          {"n_grid", grid},
          {"trials", trials},
          {"base_seed", 7}};
}

TEST(ConfigTest, ParsesFullSchema) {
  const json j = {
      {"pmf", {{"kind", "power"}, {"p", 2.0}}},
      {"estimator", {{"kind", "data_driven"}, {"eps", "tau_star"}}},
      {"n_grid", {100, 1000}},
      {"trials", 3},
      {"base_seed", 11},
      {"outputs", {{"report", "r.json"}, {"csv", "r.csv"}}},
      {"diagnostics", true}};
  const ExperimentConfig c = config_from_json(j);
  EXPECT_EQ(c.estimator.kind, EstimatorKind::kDataDriven);
  EXPECT_DOUBLE_EQ(c.estimator.eps->exponent(), 0.4);
  EXPECT_EQ(c.report_path, "r.json");
  EXPECT_TRUE(c.diagnostics);
  EXPECT_EQ(config_from_json(config_to_json(c)).n_grid, c.n_grid);
  EXPECT_EQ(target_exponent(c).value(), std::min(0.2, (1 - 0.2) / 2));
}

TEST(ConfigTest, RejectsInvalid) {
  json base = plugin_config({{"kind", "finite"}, {"weights", {{"1", 1}}}}, {10, 20}, 2);
  EXPECT_NO_THROW(config_from_json(base));
  json bad = base;
  bad["n_grid"] = {20, 10};
  EXPECT_THROW(config_from_json(bad), ConfigError);
  bad = base;
  bad["trials"] = 0;
  EXPECT_THROW(config_from_json(bad), ConfigError);
  bad = base;
  bad["estimator"]["kind"] = "mle";
  EXPECT_THROW(config_from_json(bad), ConfigError);
  bad = base;
  bad["estimator"] = {{"kind", "data_driven"}, {"eps", "tau_star"}};
  EXPECT_THROW(config_from_json(bad), ConfigError);
  bad = base;
  bad["pmf"] = {{"kind", "power"}, {"p", 0.5}};
  EXPECT_THROW(config_from_json(bad), ConfigError);
  EXPECT_THROW(config_from_json(json::array()), ConfigError);
}

TEST(ConfigTest, IncompatibleEstimatorFailsBeforeTrials) {
  json j = plugin_config({{"kind", "power"}, {"p", 2.0}}, {10}, 1);
  j["estimator"] = {{"kind", "barron"},
                    {"a", {{"coefficient", 0.5}, {"exponent", 0.5}}},
                    {"reference", {{"kind", "finite"}, {"weights", {{"1", 1}, {"2", 1}}}}}};
  EXPECT_THROW(run_error_trajectory(config_from_json(j)), ConfigError);
  j["pmf"] = {{"kind", "finite"}, {"weights", {{"1", 1}, {"3", 1}}}};
  EXPECT_THROW(run_error_trajectory(config_from_json(j)), ConfigError);
  j["estimator"].erase("a");
  j["pmf"] = {{"kind", "finite"}, {"weights", {{"1", 1}}}};
  EXPECT_THROW(run_error_trajectory(config_from_json(j)), ConfigError);
}

TEST(TrialSeedTest, UniqueWithinReport) {
  std::set<std::uint64_t> seen;
  for (std::size_t n : {100u, 1000u, 10000u, 100000u, 1000000u}) {
    for (std::size_t t = 0; t < 2000; ++t) {
      EXPECT_TRUE(seen.insert(trial_seed(42, n, t)).second);
    }
  }
}

TEST(TrajectoryTest, PointMassHasZeroError) {
  for (const char* kind : {"plugin", "data_driven", "barron", "bgm"}) {
    json j = plugin_config({{"kind", "finite"}, {"weights", {{"3", 1}}}}, {5, 50}, 4);
    j["estimator"] = {{"kind", kind},
                      {"eps", {{"coefficient", 0.5}, {"exponent", 0.1}}},
                      {"a", {{"coefficient", 1e-300}, {"exponent", 0.0}}},
                      {"h", {{"coefficient", 0.5}, {"exponent", 0.1}}},
                      {"reference", {{"kind", "finite"}, {"weights", {{"3", 1}}}}}};
    const auto r = run_error_trajectory(config_from_json(j));
    ASSERT_EQ(r.records.size(), 8u);
    for (const auto& rec : r.records) EXPECT_EQ(rec.abs_error_bits, 0.0) << kind;
  }
}

TEST(TrajectoryTest, PluginErrorDecreases) {
  const json j = plugin_config({{"kind", "finite"},
                                {"weights", {{"1", 1}, {"2", 1}, {"3", 1}, {"4", 1},
                                             {"5", 1}, {"6", 1}, {"7", 1}, {"8", 1}}}},
                               {1000, 10000, 100000}, 200);
  const auto r = run_error_trajectory(config_from_json(j));
  const auto means = mean_errors(r);
  ASSERT_EQ(means.size(), 3u);
  EXPECT_GT(means[0].second, means[1].second);
  EXPECT_GT(means[1].second, means[2].second);
  ASSERT_TRUE(r.fitted_rate.has_value());
  EXPECT_EQ(r.target_exponent, 0.5);
  for (std::size_t i = 1; i < r.records.size(); ++i) {
    const auto& a = r.records[i - 1];
    const auto& b = r.records[i];
    EXPECT_TRUE(a.n < b.n || (a.n == b.n && a.trial + 1 == b.trial));
  }
}

TEST(TrajectoryTest, DataDrivenPowerTailNeverDegenerate) {
  json j = plugin_config({{"kind", "power"}, {"p", 2.0}}, {100, 1000, 10000}, 50);
  j["estimator"] = {{"kind", "data_driven"}, {"eps", "tau_star"}};
  const auto r = run_error_trajectory(config_from_json(j));
  for (const auto& rec : r.records) EXPECT_FALSE(rec.degenerate);
  const auto means = mean_errors(r);
  EXPECT_GT(means[0].second, means[2].second);
}

TEST(TrajectoryTest, DeterministicAcrossJobCounts) {
  json j = plugin_config({{"kind", "exp"}, {"alpha", 0.5}}, {50, 500}, 16);
  j["estimator"] = {{"kind", "bgm"},
                    {"a", {{"coefficient", 1.0}, {"exponent", 0.1}}},
                    {"h", {{"coefficient", 1.0}, {"exponent", 0.2}}},
                    {"reference", {{"kind", "exp"}, {"alpha", 0.3}}}};
  j["record_divergence"] = true;
  const auto c = config_from_json(j);
  const std::string a = report_to_json(run_error_trajectory(c, 1)).dump();
  const std::string b = report_to_json(run_error_trajectory(c, 4)).dump();
  const std::string again = report_to_json(run_error_trajectory(c, 1)).dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, again);
}

TEST(TrajectoryTest, RecordsDivergence) {
  json j = plugin_config({{"kind", "finite"}, {"weights", {{"1", 1}, {"2", 3}}}},
                         {10, 1000}, 5);
  j["estimator"] = {{"kind", "barron"},
                    {"a", {{"coefficient", 0.5}, {"exponent", 0.5}}},
                    {"reference", {{"kind", "finite"}, {"weights", {{"1", 1}, {"2", 1}, {"3", 1}}}}}};
  j["record_divergence"] = true;
  const auto r = run_error_trajectory(config_from_json(j));
  for (const auto& rec : r.records) {
    ASSERT_TRUE(rec.divergence_bits.has_value());
    EXPECT_TRUE(std::isfinite(*rec.divergence_bits));
  }
}

TEST(FitRateTest, ExactPowerLaw) {
  const std::vector<double> n = {1e3, 1e4, 1e5, 1e6};
  std::vector<double> e;
  for (double x : n) e.push_back(3.0 * std::pow(x, -0.5));
  const FittedRate f = fit_power_law(n, e);
  EXPECT_NEAR(f.slope, -0.5, 1e-12);
  EXPECT_NEAR(f.r2, 1.0, 1e-12);
}

TEST(FitRateTest, NoisyPowerLaw) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> noise(0.0, 0.01);
  const std::vector<double> n = {1e3, 1e4, 1e5, 1e6};
  std::vector<double> e;
  for (double x : n) e.push_back(std::pow(x, -0.2) * (1.0 + noise(gen)));
  EXPECT_NEAR(fit_power_law(n, e).slope, -0.2, 0.02);
}

TEST(FitRateTest, ConstantAndUnavailable) {
  const std::vector<double> n = {10, 100, 1000};
  const std::vector<double> flat = {0.3, 0.3, 0.3};
  EXPECT_NEAR(fit_power_law(n, flat).slope, 0.0, 1e-15);
  EXPECT_THROW(fit_power_law(std::vector<double>{10, 100}, std::vector<double>{1, 1}),
               FitUnavailable);
  EXPECT_THROW(fit_power_law(n, std::vector<double>{1, 0, 1}), FitUnavailable);
  ExperimentReport empty;
  EXPECT_THROW(fit_rate(empty), FitUnavailable);
}

TEST(CoverageTest, ConservativeInterval) {
  const json u8 = {{"kind", "finite"},
                   {"weights", {{"1", 1}, {"2", 1}, {"3", 1}, {"4", 1},
                                {"5", 1}, {"6", 1}, {"7", 1}, {"8", 1}}}};
  const auto pts = coverage_experiment(config_from_json(plugin_config(u8, {500, 100000}, 200)),
                                       0.05);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_GE(pts[0].coverage, 0.95);
  EXPECT_GE(pts[1].coverage, 0.95);
  EXPECT_NEAR(pts[0].halfwidth / pts[1].halfwidth, std::sqrt(200.0), 1e-12);
  const json u2 = {{"kind", "finite"}, {"weights", {{"1", 1}, {"2", 1}}}};
  EXPECT_GE(coverage_experiment(config_from_json(plugin_config(u2, {1000}, 100)), 0.5)[0]
                .coverage,
            0.5);
  EXPECT_THROW(coverage_experiment(
                   config_from_json(plugin_config({{"kind", "power"}, {"p", 2.0}}, {10}, 1)),
                   0.05),
               ConfigError);
}

TEST(ExpectedErrorTest, PluginMeanErrorBelowIntegratedBound) {
  const json u4 = {{"kind", "finite"}, {"weights", {{"1", 1}, {"2", 1}, {"3", 1}, {"4", 1}}}};
  const auto r = run_error_trajectory(config_from_json(plugin_config(u4, {100, 1000, 10000}, 300)));
  const SupportStats st{0.25, 2.0, 4};
  for (const auto& [n, mean] : mean_errors(r)) {
    const double b = plugin_expected_error_bound(st, n);
    if (b < 2.0) {
      EXPECT_LE(mean, b) << n;
    }
  }
}

TEST(DiagnosticsTest, ThresholdAboveAllMasses) {
  const Pmf geo = make_exp_tail_pmf(std::log(2.0));
  const auto d = compute_diagnostics(sample(geo, 100, 1), geo, 0.9);
  EXPECT_TRUE(d.oracle_gamma.empty());
  EXPECT_EQ(d.oracle_gamma_half, (SymbolSet{1}));
  EXPECT_TRUE(std::isinf(d.a_eps));
  EXPECT_GE(d.xi, 0.0);
  EXPECT_GE(d.rho, 0.0);
}

TEST(DiagnosticsTest, SupportRecoveredForLargeSamples) {
  const Pmf u = make_uniform_pmf(4);
  int recovered = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    recovered += compute_diagnostics(sample(u, 200, s), u, 0.1).support_recovered;
  }
  // P(miss) <= 2^5 e^{-n m^2} is vacuous here; the exact miss rate is ~4 (3/4)^200.
  EXPECT_EQ(recovered, 200);
  EXPECT_FALSE(compute_diagnostics(sample(u, 1, 0), u, 0.1).support_recovered);
}

TEST(DiagnosticsTest, OracleDominatesUnderContainment) {
  const Pmf truth = make_power_tail_pmf(2.0);
  const std::size_t n = 10000;
  const double eps = std::pow(static_cast<double>(n), -0.4);
  int dominated = 0;
  int contained = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto d = compute_diagnostics(sample(truth, n, 900 + s), truth, eps);
    if (d.gamma_within_oracle_half) {
      ++contained;
      EXPECT_GE(d.xi, d.rho - 1e-15);
    }
    dominated += d.xi >= d.rho - 1e-12;
    EXPECT_GE(d.b_eps, 0.0);
    EXPECT_GE(d.a_eps, 0.0);
  }
  EXPECT_GT(contained, 90);
  EXPECT_GE(dominated, 99);
}

TEST(DiagnosticsTest, ApproximationBoundOnFiniteTruth) {
  const Pmf truth = make_finite_pmf({{1, 0.5}, {2, 0.3}, {3, 0.2}});
  const auto d = compute_diagnostics(sample(truth, 1000, 3), truth, 0.25);
  // Oracle set {1, 2}: H(rest) + log2(1/0.8) + (1/0.8 - 1) H(kept).
  const double kept = -0.5 * std::log2(0.5) - 0.3 * std::log2(0.3);
  const double expected = -0.2 * std::log2(0.2) + std::log2(1 / 0.8) + 0.25 * kept;
  EXPECT_NEAR(d.a_eps, expected, 1e-12);
}

TEST(ReportIoTest, RoundTripAndCsv) {
  json j = plugin_config({{"kind", "power"}, {"p", 2.0}}, {20, 40, 80}, 3);
  j["estimator"] = {{"kind", "data_driven"}, {"eps", {{"coefficient", 0.9}, {"exponent", 0.3}}}};
  j["diagnostics"] = true;
  j["record_divergence"] = true;
  const auto r = run_error_trajectory(config_from_json(j));
  const std::string path = temp_path("roundtrip.json");
  save_report(r, path);
  const auto back = load_report(path);
  EXPECT_EQ(report_to_json(back).dump(), report_to_json(r).dump());
  std::ostringstream csv;
  write_records_csv(r, csv);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "n,trial,seed,estimate,abs_error,degenerate");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 9);
  std::remove(path.c_str());
}

TEST(ReportIoTest, EmptyGridIsValid) {
  const auto r = run_error_trajectory(
      config_from_json(plugin_config({{"kind", "exp"}, {"alpha", 1.0}}, {}, 1)));
  EXPECT_TRUE(r.records.empty());
  EXPECT_FALSE(r.fitted_rate.has_value());
  const std::string path = temp_path("empty.json");
  save_report(r, path);
  EXPECT_FALSE(load_report(path).fitted_rate.has_value());
  std::remove(path.c_str());
}

TEST(ReportIoTest, MalformedFileReportsLine) {
  const std::string path = temp_path("bad.json");
  {
    std::ofstream out(path);
    out << "{\n  \"config\": {},\n  \"records\": [1,,]\n}\n";
  }
  try {
    load_report(path);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
  }
  EXPECT_THROW(load_report(temp_path("missing.json")), IoError);
  std::remove(path.c_str());
}

}  // namespace
}  // namespace infalpha
