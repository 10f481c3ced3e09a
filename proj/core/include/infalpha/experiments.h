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
// Seeded Monte Carlo engine: error trajectories over a grid of sample sizes,
// empirical rate fits, confidence-interval coverage, and the diagnostic
// quantities that split the data-driven error into estimation and
// approximation parts. Reports persist as JSON and CSV.

#ifndef INFALPHA_EXPERIMENTS_H_
#define INFALPHA_EXPERIMENTS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "infalpha/alphabet_models.h"
#include "infalpha/empirical.h"
#include "infalpha/estimators.h"

namespace infalpha {

struct EstimatorConfig {
  EstimatorKind kind = EstimatorKind::kPlugin;
  std::optional<Schedule> a;
  std::optional<Schedule> h;
  std::optional<Schedule> eps;
  std::optional<nlohmann::json> reference;  // pmf spec of v
};

struct ExperimentConfig {
  nlohmann::json pmf;
  EstimatorConfig estimator;
  std::vector<std::size_t> n_grid;
  std::size_t trials = 1;
  std::uint64_t base_seed = 0;
  std::optional<std::string> report_path;
  std::optional<std::string> csv_path;
  bool diagnostics = false;        // data-driven only
  bool record_divergence = false;  // D(mu || estimate) per record
};

// Schema:
//   {"pmf": <pmf spec>,
//    "estimator": {"kind": "plugin" | "barron" | "bgm" | "data_driven",
//                  "a" | "h" | "eps": {"coefficient": c, "exponent": t},
//                  "eps": "tau_star"          (power-law truth only),
//                  "reference": <pmf spec>},
//    "n_grid": [n1, n2, ...], "trials": T, "base_seed": S,
//    "outputs": {"report": path, "csv": path},
//    "diagnostics": bool, "record_divergence": bool}
// Throws ConfigError on schema or range violations.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);
// Throws IoError when unreadable, ParseError on malformed JSON.
ExperimentConfig load_config(const std::string& path);

// Throws ConfigError when the estimator cannot be run against the pmf (for
// example a mixture reference that does not dominate the truth).
void check_compatibility(const ExperimentConfig& config);

// base_seed XOR a bijective mix of (n, trial).
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t n, std::size_t trial);

struct Diagnostics {
  SymbolSet oracle_gamma;       // {x : mu(x) >= eps}
  SymbolSet oracle_gamma_half;  // {x : mu(x) >= eps / 2}
  SymbolSet gamma;              // {x : mu_n(x) >= eps}
  double xi;                    // log2(1/eps) V on sigma(oracle_gamma_half)
  double rho;                   // log2(1/eps) V on sigma(gamma)
  bool support_recovered;       // supp(mu_n) == supp(mu)
  double a_eps;  // approximation bound on the oracle set
  double b_eps;  // approximation bound on the data-driven set
  bool gamma_within_oracle_half;
};

nlohmann::json diagnostics_to_json(const Diagnostics& d);
Diagnostics diagnostics_from_json(const nlohmann::json& j);

Diagnostics compute_diagnostics(const FiniteMeasure& empirical, const Pmf& truth,
                                double eps);
Diagnostics compute_diagnostics(const Sample& sample, const Pmf& truth, double eps);

struct TrialRecord {
  std::size_t n = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double estimate_bits = 0.0;
  double abs_error_bits = 0.0;
  bool degenerate = false;
  std::optional<Diagnostics> diagnostics;
  std::optional<double> divergence_bits;
};

struct FittedRate {
  double slope;
  double intercept;
  double r2;
};

struct ExperimentReport {
  nlohmann::json config;
  double true_entropy_bits = 0.0;
  std::optional<double> target_exponent;
  std::vector<TrialRecord> records;  // sorted by (n, trial)
  std::optional<FittedRate> fitted_rate;
};

// Predicted decay exponent for the configured estimator and truth, if the
// theory provides one.
std::optional<double> target_exponent(const ExperimentConfig& config);

// Runs every (n, trial) cell on `jobs` worker threads. The result does not
// depend on `jobs`.
ExperimentReport run_error_trajectory(const ExperimentConfig& config,
                                      std::size_t jobs = 1);

// Mean absolute error per grid point, in grid order.
std::vector<std::pair<std::size_t, double>> mean_errors(const ExperimentReport& r);

// OLS of log2(mean abs error) on log2 n. Throws FitUnavailable with fewer
// than three points or a nonpositive mean error.
FittedRate fit_rate(const ExperimentReport& report);
FittedRate fit_power_law(std::span<const double> n, std::span<const double> error);

struct CoveragePoint {
  std::size_t n;
  double halfwidth;
  double coverage;
};

// Fraction of plugin trials with |H_n - H| within the confidence
// half-width computed from the true support statistics. Throws ConfigError
// for infinite-support truth or a non-plugin estimator.
std::vector<CoveragePoint> coverage_experiment(const ExperimentConfig& config,
                                               double delta, std::size_t jobs = 1);
// Throws ConfigError unless the config is a plugin run on a finite-support pmf.
void check_coverage_config(const ExperimentConfig& config);
// Coverage of an already computed plugin report.
std::vector<CoveragePoint> coverage_points(const ExperimentConfig& config,
                                           const ExperimentReport& report,
                                           double delta);

// Per-trial deviations of the plugin measure from a finite-support truth.
struct PluginDeviation {
  double tv;
  double entropy_error;  // |H(mu_n) - H(mu)|
  double reverse_kl;     // D(mu_n || mu)
  double direct_kl;      // D(mu || mu_n), infinite until the support is covered
};
std::vector<PluginDeviation> plugin_deviations(const Pmf& truth, std::size_t n,
                                               std::size_t trials,
                                               std::uint64_t base_seed,
                                               std::size_t jobs = 1);

nlohmann::json report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::json& j);
void save_report(const ExperimentReport& report, const std::string& path);
// Throws IoError or ParseError (with line and column).
ExperimentReport load_report(const std::string& path);
// Header n,trial,seed,estimate,abs_error,degenerate.
void write_records_csv(const ExperimentReport& report, std::ostream& out);

}  // namespace infalpha

#endif  // INFALPHA_EXPERIMENTS_H_
