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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "infalpha/bounds.h"
#include "infalpha/errors.h"
#include "series.h"

namespace infalpha {
namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Runs fn(i) for i in [0, count) on up to `jobs` threads; rethrows the first
// exception after all workers stop.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

json encode_double(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double decode_double(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ParseError("expected a number, got " + j.dump());
}

json schedule_to_json(const Schedule& s) {
  return {{"coefficient", s.coefficient()}, {"exponent", s.exponent()}};
}

Schedule schedule_from_json(const json& j, ScheduleRole role, const json& pmf) {
  if (j.is_string() && j.get<std::string>() == "tau_star") {
    if (role != ScheduleRole::kThreshold || pmf.value("kind", "") != "power") {
      throw ConfigError("\"tau_star\" applies to eps with a power-law pmf only");
    }
    return make_schedule(role, 1.0,
                         power_tail_threshold_exponent(pmf.at("p").get<double>()));
  }
  if (!j.is_object()) throw ConfigError("schedule must be an object: " + j.dump());
  return make_schedule(role, j.at("coefficient").get<double>(),
                       j.value("exponent", 0.0));
}

json symbols_to_json(const SymbolSet& s) { return json(s); }

SymbolSet symbols_from_json(const json& j) { return j.get<SymbolSet>(); }

}  // namespace

json diagnostics_to_json(const Diagnostics& d) {
  return {{"oracle_gamma", symbols_to_json(d.oracle_gamma)},
          {"oracle_gamma_half", symbols_to_json(d.oracle_gamma_half)},
          {"gamma", symbols_to_json(d.gamma)},
          {"xi", encode_double(d.xi)},
          {"rho", encode_double(d.rho)},
          {"support_recovered", d.support_recovered},
          {"a_eps", encode_double(d.a_eps)},
          {"b_eps", encode_double(d.b_eps)},
          {"gamma_within_oracle_half", d.gamma_within_oracle_half}};
}

Diagnostics diagnostics_from_json(const json& j) {
  Diagnostics d;
  d.oracle_gamma = symbols_from_json(j.at("oracle_gamma"));
  d.oracle_gamma_half = symbols_from_json(j.at("oracle_gamma_half"));
  d.gamma = symbols_from_json(j.at("gamma"));
  d.xi = decode_double(j.at("xi"));
  d.rho = decode_double(j.at("rho"));
  d.support_recovered = j.at("support_recovered").get<bool>();
  d.a_eps = decode_double(j.at("a_eps"));
  d.b_eps = decode_double(j.at("b_eps"));
  d.gamma_within_oracle_half = j.at("gamma_within_oracle_half").get<bool>();
  return d;
}

namespace {

// {x : mu(x) >= eps}. Both parametric families decrease in x.
SymbolSet oracle_set(const Pmf& truth, double eps) {
  SymbolSet out;
  if (truth.has_finite_support()) {
    for (const Atom& a : truth.atoms()) {
      if (a.mass >= eps) out.push_back(a.symbol);
    }
    return out;
  }
  for (Symbol x = truth.support_offset(); truth.mass(x) >= eps; ++x) {
    out.push_back(x);
  }
  return out;
}

// Approximation-error bound of conditioning mu on `set`:
// H(set^c part) + log2(1/mu(set)) + (1/mu(set) - 1) H(set part).
double approximation_bound(const Pmf& truth, double h_truth, const SymbolSet& set) {
  series::CompensatedSum mass;
  series::CompensatedSum inside;
  for (Symbol x : set) {
    const double f = truth.mass(x);
    mass.add(f);
    if (f > 0.0) inside.add(-f * std::log2(f));
  }
  const double m = mass.value();
  if (!(m > 0.0)) return kInf;
  const double outside = std::max(0.0, h_truth - inside.value());
  return outside - std::log2(std::min(1.0, m)) + (1.0 / m - 1.0) * inside.value();
}

struct Prepared {
  std::optional<Pmf> truth;
  double true_entropy = 0.0;
  std::optional<Pmf> reference;
  std::map<std::size_t, Partition> partitions;
};

Prepared prepare(const ExperimentConfig& config) {
  check_compatibility(config);
  Prepared p;
  p.truth = pmf_from_json(config.pmf);
  p.true_entropy = pmf_entropy(*p.truth);
  if (config.estimator.reference) {
    p.reference = pmf_from_json(*config.estimator.reference);
  }
  if (config.estimator.kind == EstimatorKind::kBgm) {
    for (std::size_t n : config.n_grid) {
      p.partitions.emplace(n, build_bgm_partition(*p.reference, (*config.estimator.h)(n)));
    }
  }
  return p;
}

std::optional<double> divergence_to_estimate(const Pmf& truth,
                                             const EstimatorResult& r,
                                             const Pmf* reference) {
  if (r.degenerate) return kInf;
  if (const auto* fm = std::get_if<FiniteMeasure>(&r.measure)) {
    return kl_divergence(truth, *fm);
  }
  if (const auto* cm = std::get_if<CellMixture>(&r.measure)) {
    if (!truth.has_finite_support() || reference == nullptr) return std::nullopt;
    series::CompensatedSum acc;
    for (const Atom& a : truth.atoms()) {
      const double q = cm->mass(a.symbol, *reference);
      if (!(q > 0.0)) return kInf;
      acc.add(a.mass * std::log2(a.mass / q));
    }
    return std::max(0.0, acc.value());
  }
  return std::nullopt;
}

TrialRecord run_trial(const ExperimentConfig& config, const Prepared& prep,
                      std::size_t n, std::size_t trial) {
  TrialRecord rec;
  rec.n = n;
  rec.trial = trial;
  rec.seed = trial_seed(config.base_seed, n, trial);
  const Sample s = sample(*prep.truth, n, rec.seed);
  const FiniteMeasure emp = empirical_measure(s);
  const auto& est = config.estimator;

  EstimatorResult r;
  switch (est.kind) {
    case EstimatorKind::kPlugin:
      r = plugin_entropy(emp);
      break;
    case EstimatorKind::kBarron:
      r = barron_mixture(emp, *prep.reference, (*est.a)(n));
      break;
    case EstimatorKind::kBgm:
      r = bgm_estimate(emp, *prep.reference, (*est.a)(n), prep.partitions.at(n));
      break;
    case EstimatorKind::kDataDriven:
      r = data_driven_estimate(emp, (*est.eps)(n));
      break;
  }
  rec.estimate_bits = r.entropy_bits;
  rec.abs_error_bits = std::fabs(r.entropy_bits - prep.true_entropy);
  rec.degenerate = r.degenerate;
  if (config.diagnostics && est.eps) {
    rec.diagnostics = compute_diagnostics(emp, *prep.truth, (*est.eps)(n));
  }
  if (config.record_divergence) {
    rec.divergence_bits = divergence_to_estimate(
        *prep.truth, r, prep.reference ? &*prep.reference : nullptr);
  }
  return rec;
}

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text,
                                                    std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // The reported byte is one past the offending character.
    const auto [line, col] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": malformed JSON");
  }
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  try {
    if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
    ExperimentConfig c;
    c.pmf = j.at("pmf");
    pmf_from_json(c.pmf);  // validates the spec early

    const json& e = j.at("estimator");
    c.estimator.kind = parse_estimator_kind(e.at("kind").get<std::string>());
    if (e.contains("a")) {
      c.estimator.a = schedule_from_json(e["a"], ScheduleRole::kMixture, c.pmf);
    }
    if (e.contains("h")) {
      c.estimator.h = schedule_from_json(e["h"], ScheduleRole::kBandwidth, c.pmf);
    }
    if (e.contains("eps")) {
      c.estimator.eps = schedule_from_json(e["eps"], ScheduleRole::kThreshold, c.pmf);
    }
    if (e.contains("reference")) {
      c.estimator.reference = e["reference"];
      pmf_from_json(*c.estimator.reference);
    }

    c.n_grid = j.value("n_grid", std::vector<std::size_t>{});
    for (std::size_t i = 0; i < c.n_grid.size(); ++i) {
      if (c.n_grid[i] == 0) throw ConfigError("n_grid entries must be >= 1");
      if (i > 0 && c.n_grid[i] <= c.n_grid[i - 1]) {
        throw ConfigError("n_grid must be strictly increasing");
      }
    }
    const auto trials = j.value("trials", std::int64_t{1});
    if (trials < 1) throw ConfigError("trials must be >= 1");
    c.trials = static_cast<std::size_t>(trials);
    c.base_seed = j.value("base_seed", std::uint64_t{0});
    if (j.contains("outputs")) {
      const json& o = j["outputs"];
      if (o.contains("report")) c.report_path = o["report"].get<std::string>();
      if (o.contains("csv")) c.csv_path = o["csv"].get<std::string>();
    }
    c.diagnostics = j.value("diagnostics", false);
    c.record_divergence = j.value("record_divergence", false);
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed experiment config: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

json config_to_json(const ExperimentConfig& c) {
  json e = {{"kind", std::string(estimator_name(c.estimator.kind))}};
  if (c.estimator.a) e["a"] = schedule_to_json(*c.estimator.a);
  if (c.estimator.h) e["h"] = schedule_to_json(*c.estimator.h);
  if (c.estimator.eps) e["eps"] = schedule_to_json(*c.estimator.eps);
  if (c.estimator.reference) e["reference"] = *c.estimator.reference;
  json j = {{"pmf", c.pmf},
            {"estimator", e},
            {"n_grid", c.n_grid},
            {"trials", c.trials},
            {"base_seed", c.base_seed},
            {"diagnostics", c.diagnostics},
            {"record_divergence", c.record_divergence}};
  json outputs = json::object();
  if (c.report_path) outputs["report"] = *c.report_path;
  if (c.csv_path) outputs["csv"] = *c.csv_path;
  if (!outputs.empty()) j["outputs"] = outputs;
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  return config_from_json(parse_json_file(path));
}

void check_compatibility(const ExperimentConfig& config) {
  const Pmf truth = pmf_from_json(config.pmf);
  const auto& est = config.estimator;
  auto need = [&](bool present, const char* what) {
    if (!present) {
      throw ConfigError(std::string(estimator_name(est.kind)) + " estimator needs " + what);
    }
  };
  switch (est.kind) {
    case EstimatorKind::kPlugin:
      return;
    case EstimatorKind::kDataDriven:
      need(est.eps.has_value(), "an eps schedule");
      return;
    case EstimatorKind::kBarron:
    case EstimatorKind::kBgm:
      break;
  }
  need(est.a.has_value(), "an a schedule");
  need(est.reference.has_value(), "a reference pmf");
  if (est.kind == EstimatorKind::kBgm) need(est.h.has_value(), "an h schedule");
  const Pmf v = pmf_from_json(*est.reference);
  if (est.kind == EstimatorKind::kBarron && !v.has_finite_support()) {
    throw ConfigError("barron estimator needs a finite-support reference");
  }
  // The truth must be absolutely continuous with respect to v.
  bool dominated = true;
  if (truth.has_finite_support()) {
    for (const Atom& a : truth.atoms()) dominated = dominated && v.mass(a.symbol) > 0.0;
  } else {
    dominated = !v.has_finite_support() && v.support_offset() <= truth.support_offset();
  }
  if (!dominated) {
    throw ConfigError("the reference pmf does not dominate the sampled pmf");
  }
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t n, std::size_t trial) {
  // splitmix64 finalizer; bijective, and (n, trial) packs injectively while
  // both stay below 2^32.
  std::uint64_t z = (static_cast<std::uint64_t>(n) << 32) ^
                    static_cast<std::uint64_t>(trial);
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return base_seed ^ z;
}

Diagnostics compute_diagnostics(const FiniteMeasure& empirical, const Pmf& truth,
                                double eps) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
  Diagnostics d;
  d.oracle_gamma = oracle_set(truth, eps);
  d.oracle_gamma_half = oracle_set(truth, eps / 2.0);
  d.gamma = threshold_set(empirical, eps);
  const double scale = std::log2(1.0 / eps);
  d.xi = scale * restricted_variation(truth, empirical, d.oracle_gamma_half);
  d.rho = scale * restricted_variation(truth, empirical, d.gamma);
  d.support_recovered =
      truth.has_finite_support() &&
      empirical.support() == FiniteMeasure::from_pmf(truth).support();
  const double h = pmf_entropy(truth);
  d.a_eps = approximation_bound(truth, h, d.oracle_gamma);
  d.b_eps = approximation_bound(truth, h, d.gamma);
  d.gamma_within_oracle_half =
      std::includes(d.oracle_gamma_half.begin(), d.oracle_gamma_half.end(),
                    d.gamma.begin(), d.gamma.end());
  return d;
}

Diagnostics compute_diagnostics(const Sample& sample, const Pmf& truth, double eps) {
  return compute_diagnostics(empirical_measure(sample), truth, eps);
}

std::optional<double> target_exponent(const ExperimentConfig& config) {
  const Pmf truth = pmf_from_json(config.pmf);
  const auto& est = config.estimator;
  switch (truth.kind()) {
    case PmfKind::kFinite:
      if (est.kind == EstimatorKind::kBgm) return std::nullopt;
      return 0.5;
    case PmfKind::kPowerTail: {
      if (est.kind != EstimatorKind::kDataDriven || !est.eps) return std::nullopt;
      const double p = truth.exponent();
      const double tau = est.eps->exponent();
      // Approximation error decays like n^{-tau(p-1)/p}, estimation error
      // like n^{-(1 - tau/p)/2}.
      return std::min(tau * (p - 1.0) / p, (1.0 - tau / p) / 2.0);
    }
    case PmfKind::kExpTail:
      if (est.kind != EstimatorKind::kDataDriven || !est.eps) return std::nullopt;
      return est.eps->exponent();
  }
  return std::nullopt;
}

ExperimentReport run_error_trajectory(const ExperimentConfig& config,
                                      std::size_t jobs) {
  const Prepared prep = prepare(config);
  ExperimentReport report;
  report.config = config_to_json(config);
  report.true_entropy_bits = prep.true_entropy;
  report.target_exponent = target_exponent(config);

  const std::size_t cells = config.n_grid.size() * config.trials;
  report.records.resize(cells);
  parallel_for(cells, jobs, [&](std::size_t i) {
    const std::size_t n = config.n_grid[i / config.trials];
    report.records[i] = run_trial(config, prep, n, i % config.trials);
  });

  if (config.n_grid.size() >= 3) {
    try {
      report.fitted_rate = fit_rate(report);
    } catch (const FitUnavailable&) {
    }
  }
  return report;
}

std::vector<std::pair<std::size_t, double>> mean_errors(const ExperimentReport& r) {
  std::vector<std::pair<std::size_t, double>> out;
  std::map<std::size_t, std::pair<series::CompensatedSum, std::size_t>> acc;
  for (const auto& rec : r.records) {
    auto& [sum, count] = acc[rec.n];
    sum.add(rec.abs_error_bits);
    ++count;
  }
  for (const auto& [n, sc] : acc) {
    out.emplace_back(n, sc.first.value() / static_cast<double>(sc.second));
  }
  return out;
}

FittedRate fit_rate(const ExperimentReport& report) {
  std::vector<double> ns;
  std::vector<double> errs;
  for (const auto& [n, e] : mean_errors(report)) {
    ns.push_back(static_cast<double>(n));
    errs.push_back(e);
  }
  return fit_power_law(ns, errs);
}

FittedRate fit_power_law(std::span<const double> n, std::span<const double> error) {
  if (n.size() != error.size()) throw FitUnavailable("mismatched fit inputs");
  if (n.size() < 3) throw FitUnavailable("rate fit needs at least 3 grid points");
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(error[i] > 0.0) || !std::isfinite(error[i])) {
      throw FitUnavailable("rate fit needs positive finite mean errors");
    }
    x.push_back(std::log2(n[i]));
    y.push_back(std::log2(error[i]));
  }
  const double k = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw FitUnavailable("rate fit needs distinct sample sizes");
  FittedRate f{};
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    sse += r * r;
  }
  // A flat response is fitted perfectly by slope 0.
  f.r2 = syy == 0.0 ? 1.0 : 1.0 - sse / syy;
  return f;
}

void check_coverage_config(const ExperimentConfig& config) {
  const Pmf truth = pmf_from_json(config.pmf);
  if (!truth.has_finite_support()) {
    throw ConfigError("coverage needs a finite-support pmf");
  }
  if (config.estimator.kind != EstimatorKind::kPlugin) {
    throw ConfigError("coverage is defined for the plugin estimator");
  }
}

std::vector<CoveragePoint> coverage_points(const ExperimentConfig& config,
                                           const ExperimentReport& report,
                                           double delta) {
  check_coverage_config(config);
  const Pmf truth = pmf_from_json(config.pmf);
  if (report.records.size() != config.n_grid.size() * config.trials) {
    throw ConfigError("report does not match the coverage config");
  }
  const SupportStats stats = support_stats(truth);
  std::vector<CoveragePoint> out;
  std::size_t i = 0;
  for (std::size_t n : config.n_grid) {
    const double hw = plugin_confidence_halfwidth(stats, n, delta);
    std::size_t covered = 0;
    for (std::size_t t = 0; t < config.trials; ++t, ++i) {
      if (report.records[i].abs_error_bits <= hw) ++covered;
    }
    out.push_back({n, hw, static_cast<double>(covered) /
                              static_cast<double>(config.trials)});
  }
  return out;
}

std::vector<CoveragePoint> coverage_experiment(const ExperimentConfig& config,
                                               double delta, std::size_t jobs) {
  check_coverage_config(config);
  return coverage_points(config, run_error_trajectory(config, jobs), delta);
}

std::vector<PluginDeviation> plugin_deviations(const Pmf& truth, std::size_t n,
                                               std::size_t trials,
                                               std::uint64_t base_seed,
                                               std::size_t jobs) {
  if (!truth.has_finite_support()) {
    throw DomainError("plugin deviations need a finite-support truth");
  }
  const FiniteMeasure mu = FiniteMeasure::from_pmf(truth);
  const double h = entropy(mu);
  std::vector<PluginDeviation> out(trials);
  parallel_for(trials, jobs, [&](std::size_t t) {
    const FiniteMeasure mn = empirical_measure(sample(truth, n, trial_seed(base_seed, n, t)));
    out[t] = {total_variation(mn, mu), std::abs(entropy(mn) - h), kl_divergence(mn, mu),
              kl_divergence(mu, mn)};
  });
  return out;
}

json report_to_json(const ExperimentReport& report) {
  json records = json::array();
  for (const auto& r : report.records) {
    json jr = {{"n", r.n},
               {"trial", r.trial},
               {"seed", r.seed},
               {"estimate_bits", encode_double(r.estimate_bits)},
               {"abs_error_bits", encode_double(r.abs_error_bits)},
               {"degenerate", r.degenerate}};
    if (r.diagnostics) jr["diagnostics"] = diagnostics_to_json(*r.diagnostics);
    if (r.divergence_bits) jr["divergence_bits"] = encode_double(*r.divergence_bits);
    records.push_back(std::move(jr));
  }
  json j = {{"config", report.config},
            {"true_entropy_bits", encode_double(report.true_entropy_bits)},
            {"target_exponent", report.target_exponent
                                    ? encode_double(*report.target_exponent)
                                    : json(nullptr)},
            {"records", records}};
  if (report.fitted_rate) {
    j["fitted_rate"] = {{"slope", encode_double(report.fitted_rate->slope)},
                        {"intercept", encode_double(report.fitted_rate->intercept)},
                        {"r2", encode_double(report.fitted_rate->r2)}};
  }
  return j;
}

ExperimentReport report_from_json(const json& j) {
  try {
    ExperimentReport r;
    r.config = j.at("config");
    r.true_entropy_bits = decode_double(j.at("true_entropy_bits"));
    if (!j.at("target_exponent").is_null()) {
      r.target_exponent = decode_double(j["target_exponent"]);
    }
    for (const auto& jr : j.at("records")) {
      TrialRecord t;
      t.n = jr.at("n").get<std::size_t>();
      t.trial = jr.at("trial").get<std::size_t>();
      t.seed = jr.at("seed").get<std::uint64_t>();
      t.estimate_bits = decode_double(jr.at("estimate_bits"));
      t.abs_error_bits = decode_double(jr.at("abs_error_bits"));
      t.degenerate = jr.at("degenerate").get<bool>();
      if (jr.contains("diagnostics")) {
        t.diagnostics = diagnostics_from_json(jr["diagnostics"]);
      }
      if (jr.contains("divergence_bits")) {
        t.divergence_bits = decode_double(jr["divergence_bits"]);
      }
      r.records.push_back(std::move(t));
    }
    if (j.contains("fitted_rate")) {
      const json& f = j["fitted_rate"];
      r.fitted_rate = FittedRate{decode_double(f.at("slope")),
                                 decode_double(f.at("intercept")),
                                 decode_double(f.at("r2"))};
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

void save_report(const ExperimentReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << report_to_json(report).dump(2) << '\n';
  if (!out) throw IoError("failed writing '" + path + "'");
}

ExperimentReport load_report(const std::string& path) {
  return report_from_json(parse_json_file(path));
}

void write_records_csv(const ExperimentReport& report, std::ostream& out) {
  out << "n,trial,seed,estimate,abs_error,degenerate\n";
  const auto old = out.precision(17);
  for (const auto& r : report.records) {
    out << r.n << ',' << r.trial << ',' << r.seed << ',' << r.estimate_bits << ','
        << r.abs_error_bits << ',' << (r.degenerate ? 1 : 0) << '\n';
  }
  out.precision(old);
}

}  // namespace infalpha
