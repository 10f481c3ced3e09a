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
#include "cli.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "infalpha/alphabet_models.h"
#include "infalpha/bounds.h"
#include "infalpha/empirical.h"
#include "infalpha/errors.h"
#include "infalpha/estimators.h"
#include "infalpha/experiments.h"

namespace infalpha::cli {
namespace {

using nlohmann::json;

constexpr const char* kOutputDirEnv = "INFALPHA_OUTPUT_DIR";

std::string fixed6(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ConfigError("bad number '" + s + "' in " + what);
  return v;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": malformed JSON: " + e.what());
  }
}

// uniform:K, power:P, exp:ALPHA, geometric, finite:x=w,..., @file.json or
// inline JSON.
json pmf_spec(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') {
    try {
      return json::parse(spec);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("malformed inline pmf: ") + e.what());
    }
  }
  if (!spec.empty() && spec.front() == '@') return read_json_file(spec.substr(1));
  if (spec == "geometric") return {{"kind", "exp"}, {"alpha", std::log(2.0)}};
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("bad pmf spec '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (kind == "uniform") {
    const double k = to_double(arg, "uniform pmf");
    if (k < 1 || k != std::floor(k) || k > 1e7) {
      throw ConfigError("uniform size must be a positive integer");
    }
    json w = json::object();
    for (int x = 1; x <= static_cast<int>(k); ++x) w[std::to_string(x)] = 1.0;
    return {{"kind", "finite"}, {"weights", w}};
  }
  if (kind == "power") return {{"kind", "power"}, {"p", to_double(arg, "power pmf")}};
  if (kind == "exp") return {{"kind", "exp"}, {"alpha", to_double(arg, "exp pmf")}};
  if (kind == "finite") {
    json w = json::object();
    for (const std::string& item : split(arg, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("finite pmf entries are x=w");
      w[item.substr(0, eq)] = to_double(item.substr(eq + 1), "finite pmf");
    }
    return {{"kind", "finite"}, {"weights", w}};
  }
  throw ConfigError("unknown pmf kind '" + kind + "'");
}

// C,T -> power-law schedule; a single number -> constant; tau_star passes
// through.
json schedule_spec(const std::string& spec) {
  if (spec == "tau_star") return spec;
  const auto parts = split(spec, ',');
  if (parts.size() == 1) return {{"coefficient", to_double(parts[0], "schedule")}, {"exponent", 0.0}};
  if (parts.size() == 2) {
    return {{"coefficient", to_double(parts[0], "schedule")},
            {"exponent", to_double(parts[1], "schedule")}};
  }
  throw ConfigError("schedule must be C,T or a constant: '" + spec + "'");
}

Schedule schedule_from_spec(const std::string& spec, ScheduleRole role,
                            const std::optional<Pmf>& truth) {
  const json j = schedule_spec(spec);
  if (j.is_string()) {
    if (role != ScheduleRole::kThreshold || !truth || truth->kind() != PmfKind::kPowerTail) {
      throw ConfigError("tau_star needs --eps with a power-law --pmf");
    }
    return make_schedule(role, 1.0, power_tail_threshold_exponent(truth->exponent()));
  }
  try {
    return make_schedule(role, j["coefficient"].get<double>(), j["exponent"].get<double>());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

SupportStats stats_spec(const std::string& spec) {
  const auto parts = split(spec, ',');
  if (parts.size() != 2) throw ConfigError("--true-support-stats takes SIZE,MIN_MASS");
  const double size = to_double(parts[0], "support size");
  const double m = to_double(parts[1], "minimum mass");
  if (size < 1 || size != std::floor(size)) throw ConfigError("support size must be >= 1");
  if (!(m > 0.0) || m * size > 1.0 + 1e-12) {
    throw ConfigError("minimum mass must lie in (0, 1/SIZE]");
  }
  return {m, -std::log2(m), static_cast<std::size_t>(size)};
}

std::string resolve_output(const std::string& path) {
  const char* dir = std::getenv(kOutputDirEnv);
  if (dir == nullptr || *dir == '\0' || std::filesystem::path(path).is_absolute()) {
    return path;
  }
  return (std::filesystem::path(dir) / path).string();
}

Sample load_sample(const std::string& path) {
  if (path == "-") return read_sample(std::cin, "stdin");
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  return read_sample(in, path);
}

// Config file first, then flags on top.
ExperimentConfig experiment_config(const CliInvocation& inv) {
  json j = inv.config_path ? read_json_file(*inv.config_path) : json::object();
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  if (inv.pmf) j["pmf"] = pmf_spec(*inv.pmf);
  if (!j.contains("estimator")) j["estimator"] = {{"kind", "plugin"}};
  json& e = j["estimator"];
  if (inv.estimator) e["kind"] = *inv.estimator;
  if (inv.a) e["a"] = schedule_spec(*inv.a);
  if (inv.h) e["h"] = schedule_spec(*inv.h);
  if (inv.eps) e["eps"] = schedule_spec(*inv.eps);
  if (inv.reference) e["reference"] = pmf_spec(*inv.reference);
  if (inv.n_grid) j["n_grid"] = *inv.n_grid;
  if (inv.trials) j["trials"] = *inv.trials;
  if (inv.seed) j["base_seed"] = *inv.seed;
  if (inv.diagnostics) j["diagnostics"] = true;
  if (!j.contains("pmf")) throw ConfigError("no pmf given (use --pmf or --config)");
  ExperimentConfig c = config_from_json(j);
  if (inv.out_path) c.report_path = *inv.out_path;
  if (inv.csv_path) c.csv_path = *inv.csv_path;
  return c;
}

void write_outputs(const ExperimentReport& report, const ExperimentConfig& c,
                   const CliInvocation& inv, std::ostream& err) {
  const std::string report_path =
      resolve_output(c.report_path.value_or(inv.subcommand + "_report.json"));
  save_report(report, report_path);
  if (inv.verbosity > 0) err << "report written to " << report_path << '\n';
  if (c.csv_path) {
    const std::string csv_path = resolve_output(*c.csv_path);
    std::ofstream out(csv_path);
    if (!out) throw IoError("cannot write '" + csv_path + "'");
    write_records_csv(report, out);
    if (inv.verbosity > 0) err << "records written to " << csv_path << '\n';
  }
}

std::string summary_line(const ExperimentReport& report) {
  std::string slope = "nan";
  std::string r2 = "nan";
  if (report.fitted_rate) {
    slope = fixed6(report.fitted_rate->slope);
    r2 = fixed6(report.fitted_rate->r2);
  }
  const std::string target =
      report.target_exponent ? fixed6(*report.target_exponent) : std::string("none");
  return "slope=" + slope + " r2=" + r2 + " target=" + target;
}

bool all_degenerate(const ExperimentReport& report) {
  if (report.records.empty()) return false;
  for (const auto& r : report.records) {
    if (!r.degenerate) return false;
  }
  return true;
}

int run_experiment(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  const ExperimentConfig c = experiment_config(inv);
  std::optional<double> delta;
  if (inv.subcommand == "coverage") {
    delta = inv.delta.value_or(0.05);
    if (!(*delta > 0.0 && *delta < 1.0)) throw ConfigError("--delta must lie in (0, 1)");
    check_coverage_config(c);
  }
  const ExperimentReport report = run_error_trajectory(c, inv.jobs);
  write_outputs(report, c, inv, err);

  if (inv.subcommand == "coverage") {
    const auto points = coverage_points(c, report, *delta);
    if (inv.json) {
      json pts = json::array();
      for (const auto& p : points) {
        pts.push_back({{"n", p.n}, {"halfwidth", p.halfwidth}, {"coverage", p.coverage}});
      }
      out << json{{"delta", *delta}, {"points", pts}}.dump(2) << '\n';
    } else {
      out << "n halfwidth coverage\n";
      for (const auto& p : points) {
        out << p.n << ' ' << fixed6(p.halfwidth) << ' ' << fixed6(p.coverage) << '\n';
      }
    }
  } else if (inv.subcommand == "trajectory") {
    if (inv.json) {
      out << report_to_json(report).dump(2) << '\n';
      return all_degenerate(report) ? kDegenerate : kOk;
    }
    out << "n mean_abs_error_bits\n";
    for (const auto& [n, mean] : mean_errors(report)) {
      out << n << ' ' << fixed6(mean) << '\n';
    }
  } else if (inv.json) {
    json j = {{"target", report.target_exponent ? json(*report.target_exponent) : json()}};
    if (report.fitted_rate) {
      j["slope"] = report.fitted_rate->slope;
      j["r2"] = report.fitted_rate->r2;
    }
    out << j.dump(2) << '\n';
    return all_degenerate(report) ? kDegenerate : kOk;
  }
  if (!inv.json) out << summary_line(report) << '\n';
  return all_degenerate(report) ? kDegenerate : kOk;
}

int run_estimate(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  if (!inv.input_path) throw ConfigError("estimate needs --input");
  const Sample s = load_sample(*inv.input_path);
  if (s.size() == 0) throw ConfigError("the sample is empty");
  const std::size_t n = s.size();
  const EstimatorKind kind = parse_estimator_kind(inv.estimator.value_or("plugin"));
  const std::optional<Pmf> truth =
      inv.pmf ? std::optional<Pmf>(pmf_from_json(pmf_spec(*inv.pmf))) : std::nullopt;
  auto need = [&](const std::optional<std::string>& v, const char* flag) -> const std::string& {
    if (!v) {
      throw ConfigError(std::string(estimator_name(kind)) + " needs " + flag);
    }
    return *v;
  };

  EstimatorResult r;
  switch (kind) {
    case EstimatorKind::kPlugin:
      r = plugin_entropy(s);
      break;
    case EstimatorKind::kBarron: {
      const Pmf v = pmf_from_json(pmf_spec(need(inv.reference, "--reference")));
      const double a = schedule_from_spec(need(inv.a, "--a"), ScheduleRole::kMixture, truth)(n);
      r = barron_mixture(s, v, a);
      break;
    }
    case EstimatorKind::kBgm: {
      const Pmf v = pmf_from_json(pmf_spec(need(inv.reference, "--reference")));
      const double a = schedule_from_spec(need(inv.a, "--a"), ScheduleRole::kMixture, truth)(n);
      const double h = schedule_from_spec(need(inv.h, "--h"), ScheduleRole::kBandwidth, truth)(n);
      r = bgm_estimate(s, v, a, h);
      break;
    }
    case EstimatorKind::kDataDriven: {
      const double eps =
          schedule_from_spec(need(inv.eps, "--eps"), ScheduleRole::kThreshold, truth)(n);
      r = data_driven_estimate(s, eps);
      break;
    }
  }

  std::optional<std::pair<double, double>> ci;
  if (inv.delta || inv.support_stats) {
    if (!inv.delta || !inv.support_stats) {
      throw ConfigError("a confidence interval needs both --delta and --true-support-stats");
    }
    if (kind != EstimatorKind::kPlugin) {
      throw ConfigError("confidence intervals are available for the plugin estimator only");
    }
    const double hw = plugin_confidence_halfwidth(stats_spec(*inv.support_stats), n, *inv.delta);
    ci = {r.entropy_bits - hw, r.entropy_bits + hw};
  }
  if (inv.verbosity > 0) {
    err << "n=" << n << " support_used=" << r.support_used.size() << '\n';
  }
  if (inv.json) {
    json j = {{"estimator", std::string(estimator_name(kind))},
              {"n", n},
              {"entropy_bits", r.entropy_bits},
              {"degenerate", r.degenerate}};
    if (ci) j["ci"] = {ci->first, ci->second};
    out << j.dump(2) << '\n';
  } else {
    out << fixed6(r.entropy_bits) << " bits\n";
    if (ci) {
      out << "ci [" << fixed6(ci->first) << ", " << fixed6(ci->second)
          << "] delta=" << fixed6(*inv.delta) << '\n';
    }
  }
  return r.degenerate ? kDegenerate : kOk;
}

BoundFormula parse_formula(const std::string& name) {
  if (name == "tv" || name == "total_variation") return BoundFormula::kTotalVariation;
  if (name == "reverse_kl") return BoundFormula::kReverseKl;
  if (name == "entropy") return BoundFormula::kEntropy;
  if (name == "direct_kl") return BoundFormula::kDirectKl;
  if (name == "data_driven") return BoundFormula::kDataDriven;
  throw ConfigError("unknown bound formula '" + name + "'");
}

double bound_value(BoundFormula f, const SupportStats& st, std::size_t n, double eps) {
  switch (f) {
    case BoundFormula::kTotalVariation:
      return tv_hoeffding(st.size, n, eps).probability_bound;
    case BoundFormula::kReverseKl:
      return plugin_bounds(st, n, eps).reverse_kl.probability_bound;
    case BoundFormula::kEntropy:
      return plugin_bounds(st, n, eps).entropy.probability_bound;
    case BoundFormula::kDirectKl:
      return plugin_bounds(st, n, eps).direct_kl.probability_bound;
    case BoundFormula::kDataDriven:
      return data_driven_finite_support_bound(st, n, eps).probability_bound;
  }
  return std::nan("");
}

double deviation_of(BoundFormula f, const PluginDeviation& d) {
  switch (f) {
    case BoundFormula::kTotalVariation:
      return d.tv;
    case BoundFormula::kReverseKl:
      return d.reverse_kl;
    case BoundFormula::kEntropy:
      return d.entropy_error;
    case BoundFormula::kDirectKl:
      return d.direct_kl;
    case BoundFormula::kDataDriven:
      break;
  }
  return std::nan("");
}

int run_bounds(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  const BoundFormula formula = parse_formula(inv.formula);
  std::optional<Pmf> truth;
  if (inv.pmf) truth = pmf_from_json(pmf_spec(*inv.pmf));
  SupportStats st{};
  if (inv.support_stats) {
    st = stats_spec(*inv.support_stats);
  } else if (truth && truth->has_finite_support()) {
    st = support_stats(*truth);
  } else {
    throw ConfigError("bounds need --true-support-stats or a finite --pmf");
  }
  if (!inv.n_grid || inv.n_grid->empty()) throw ConfigError("bounds need --n");
  const std::vector<double> eps_grid =
      inv.eps_grid.value_or(std::vector<double>{0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0});
  const std::size_t trials = inv.trials.value_or(0);
  if (trials > 0) {
    if (!truth || !truth->has_finite_support()) {
      throw ConfigError("empirical frequencies need a finite --pmf");
    }
    if (formula == BoundFormula::kDataDriven) {
      throw ConfigError("empirical frequencies are not available for data_driven");
    }
  }

  std::vector<BoundCurvePoint> curve;
  json rows = json::array();
  if (!inv.json) out << "n epsilon bound empirical_frequency\n";
  for (std::size_t n : *inv.n_grid) {
    std::vector<PluginDeviation> devs;
    if (trials > 0) devs = plugin_deviations(*truth, n, trials, inv.seed.value_or(0), inv.jobs);
    for (double eps : eps_grid) {
      double freq = std::nan("");
      if (trials > 0) {
        std::size_t hits = 0;
        for (const auto& d : devs) hits += deviation_of(formula, d) > eps;
        freq = static_cast<double>(hits) / static_cast<double>(trials);
      }
      const double b = bound_value(formula, st, n, eps);
      curve.push_back({eps, b, freq});
      if (inv.json) {
        json row = {{"n", n}, {"epsilon", eps}, {"bound", b}};
        if (trials > 0) row["empirical_frequency"] = freq;
        rows.push_back(row);
      } else {
        out << n << ' ' << fixed6(eps) << ' ' << fixed6(b) << ' '
            << (trials > 0 ? fixed6(freq) : std::string("-")) << '\n';
      }
    }
  }
  if (inv.json) {
    out << json{{"formula", std::string(formula_name(formula))}, {"rows", rows}}.dump(2) << '\n';
  }
  if (inv.csv_path) {
    const std::string path = resolve_output(*inv.csv_path);
    std::ofstream csv(path);
    if (!csv) throw IoError("cannot write '" + path + "'");
    write_bound_curve_csv(curve, csv);
    if (inv.verbosity > 0) err << "bound curve written to " << path << '\n';
  }
  return kOk;
}

int run_lecam(const CliInvocation& inv, std::ostream& out, std::ostream&) {
  const Pmf p = pmf_from_json(pmf_spec(inv.pmf.value_or("uniform:2")));
  if (!p.has_finite_support()) throw ConfigError("lecam needs a finite --pmf");
  const FiniteMeasure pm = FiniteMeasure::from_pmf(p);
  LeCamSpread spread;
  if (inv.spread == "sqrt_log") {
    spread = LeCamSpread::kSqrtLogM;
  } else if (inv.spread == "sqrt") {
    spread = LeCamSpread::kSqrtM;
  } else {
    throw ConfigError("--spread must be sqrt_log or sqrt");
  }
  const std::vector<std::size_t> ms =
      inv.m_values.value_or(std::vector<std::size_t>{100, 10000, 1000000});
  const std::vector<std::size_t> ns = inv.n_grid.value_or(std::vector<std::size_t>{100});
  json rows = json::array();
  if (!inv.json) {
    out << "M D_bits gap_bits";
    for (std::size_t n : ns) out << " risk_lb(n=" << n << ')';
    out << '\n';
  }
  for (std::size_t m : ms) {
    const LeCamPair pair = lecam_two_point(pm, m, spread);
    if (inv.json) {
      json risk = json::object();
      for (std::size_t n : ns) risk[std::to_string(n)] = pair.risk_lower_bound(n);
      rows.push_back({{"M", m},
                      {"divergence_bits", pair.divergence_bits},
                      {"entropy_gap_bits", pair.entropy_gap_bits},
                      {"risk_lower_bound", risk}});
      continue;
    }
    out << m << ' ' << fixed6(pair.divergence_bits) << ' ' << fixed6(pair.entropy_gap_bits);
    for (std::size_t n : ns) out << ' ' << fixed6(pair.risk_lower_bound(n));
    out << '\n';
  }
  if (inv.json) out << rows.dump(2) << '\n';
  return kOk;
}

std::string join(const SymbolSet& s) {
  std::string out;
  for (Symbol x : s) {
    if (!out.empty()) out += ',';
    out += std::to_string(x);
  }
  return out.empty() ? "-" : out;
}

int run_diagnose(const CliInvocation& inv, std::ostream& out, std::ostream&) {
  if (!inv.input_path) throw ConfigError("diagnose needs --input");
  if (!inv.pmf) throw ConfigError("diagnose needs the true --pmf");
  if (!inv.eps) throw ConfigError("diagnose needs --eps");
  const Sample s = load_sample(*inv.input_path);
  if (s.size() == 0) throw ConfigError("the sample is empty");
  const Pmf truth = pmf_from_json(pmf_spec(*inv.pmf));
  const double eps = schedule_from_spec(*inv.eps, ScheduleRole::kThreshold, truth)(s.size());
  const Diagnostics d = compute_diagnostics(s, truth, eps);
  if (inv.json) {
    json j = diagnostics_to_json(d);
    j["n"] = s.size();
    j["eps"] = eps;
    out << j.dump(2) << '\n';
    return d.gamma.empty() ? kDegenerate : kOk;
  }
  out << "n " << s.size() << '\n'
      << "eps " << fixed6(eps) << '\n'
      << "oracle_gamma " << join(d.oracle_gamma) << '\n'
      << "oracle_gamma_half " << join(d.oracle_gamma_half) << '\n'
      << "gamma " << join(d.gamma) << '\n'
      << "xi " << fixed6(d.xi) << '\n'
      << "rho " << fixed6(d.rho) << '\n'
      << "support_recovered " << (d.support_recovered ? "yes" : "no") << '\n'
      << "a_eps " << fixed6(d.a_eps) << '\n'
      << "b_eps " << fixed6(d.b_eps) << '\n'
      << "gamma_within_oracle_half " << (d.gamma_within_oracle_half ? "yes" : "no") << '\n';
  return d.gamma.empty() ? kDegenerate : kOk;
}

template <typename T>
CLI::Option* add_opt(CLI::App* app, const std::string& name, std::optional<T>& target,
                  const std::string& desc) {
  return app->add_option_function<T>(
      name, [&target](const T& v) { target = v; }, desc);
}

struct Parser {
  CLI::App app{"Entropy estimation on countable alphabets.", "infalpha"};
  CliInvocation inv;

  Parser() {
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Print help for every subcommand");
    app.footer("Exit codes: 0 ok, 1 degenerate result, 2 usage error, 3 I/O or runtime error.\n"
               "Relative output paths resolve against $INFALPHA_OUTPUT_DIR when set.");

    auto* estimate = app.add_subcommand("estimate", "Estimate entropy of a sample file");
    add_opt(estimate, "--input,-i", inv.input_path,
         "Newline-delimited positive integers ('-' for stdin)")
        ->required();
    estimator_flags(estimate);
    add_opt(estimate, "--pmf", inv.pmf, "True pmf, needed for --eps tau_star");
    add_opt(estimate, "--delta", inv.delta, "Confidence level for the plugin interval");
    add_opt(estimate, "--true-support-stats", inv.support_stats,
         "SIZE,MIN_MASS of the true support for the interval");
    common_flags(estimate);

    for (const auto& [name, desc] :
         {std::pair{"trajectory", "Run an error trajectory and print mean errors"},
          std::pair{"rate", "Run an error trajectory and print the fitted rate"},
          std::pair{"coverage", "Check plugin confidence-interval coverage"}}) {
      auto* sub = app.add_subcommand(name, desc);
      add_opt(sub, "--config,-c", inv.config_path, "Experiment config JSON; flags override it");
      add_opt(sub, "--pmf", inv.pmf, "Sampling pmf: uniform:K, power:P, exp:ALPHA, geometric, "
                                  "finite:x=w,..., @file.json");
      estimator_flags(sub);
      add_opt(sub, "--n", inv.n_grid, "Comma-separated sample sizes")->delimiter(',');
      add_opt(sub, "--trials", inv.trials, "Trials per sample size");
      add_opt(sub, "--seed", inv.seed, "Base seed");
      add_opt(sub, "--out,-o", inv.out_path, "Report JSON path");
      add_opt(sub, "--csv", inv.csv_path, "Per-trial CSV path");
      sub->add_option("--jobs,-j", inv.jobs, "Worker threads")->check(CLI::PositiveNumber);
      if (std::string(name) == "coverage") {
        add_opt(sub, "--delta", inv.delta, "Confidence level (default 0.05)");
      } else {
        sub->add_flag("--diagnostics", inv.diagnostics,
                      "Record data-driven diagnostics per trial");
      }
      common_flags(sub);
    }

    auto* bounds = app.add_subcommand("bounds", "Print deviation bound curves");
    add_opt(bounds, "--pmf", inv.pmf, "Finite true pmf");
    add_opt(bounds, "--true-support-stats", inv.support_stats, "SIZE,MIN_MASS instead of --pmf");
    add_opt(bounds, "--n", inv.n_grid, "Comma-separated sample sizes")->delimiter(',');
    add_opt(bounds, "--eps-grid", inv.eps_grid, "Comma-separated deviations")->delimiter(',');
    bounds->add_option("--formula", inv.formula,
                       "tv, reverse_kl, entropy, direct_kl or data_driven")
        ->capture_default_str();
    add_opt(bounds, "--trials", inv.trials, "Monte Carlo trials for empirical frequencies");
    add_opt(bounds, "--seed", inv.seed, "Base seed");
    add_opt(bounds, "--csv", inv.csv_path, "Bound curve CSV path");
    bounds->add_option("--jobs,-j", inv.jobs, "Worker threads")->check(CLI::PositiveNumber);
    common_flags(bounds);

    auto* lecam = app.add_subcommand("lecam", "Print the two-point lower bound table");
    add_opt(lecam, "--pmf", inv.pmf, "Finite base pmf (default uniform:2)");
    add_opt(lecam, "--m", inv.m_values, "Comma-separated alternative sizes")->delimiter(',');
    add_opt(lecam, "--n", inv.n_grid, "Comma-separated sample sizes (default 100)")
        ->delimiter(',');
    lecam->add_option("--spread", inv.spread, "Removed mass rule: sqrt_log or sqrt")
        ->capture_default_str();
    common_flags(lecam);

    auto* diagnose = app.add_subcommand("diagnose", "Dump data-driven diagnostics of a sample");
    add_opt(diagnose, "--input,-i", inv.input_path, "Sample file ('-' for stdin)")->required();
    add_opt(diagnose, "--pmf", inv.pmf, "True pmf")->required();
    add_opt(diagnose, "--eps", inv.eps, "Threshold: value, C,T at n, or tau_star")->required();
    common_flags(diagnose);
  }

  void estimator_flags(CLI::App* sub) {
    add_opt(sub, "--estimator,-e", inv.estimator, "plugin, barron, bgm or data_driven");
    add_opt(sub, "--a", inv.a, "Mixture weight schedule C,T (a_n = C n^-T)");
    add_opt(sub, "--h", inv.h, "Cell mass schedule C,T");
    add_opt(sub, "--eps", inv.eps, "Threshold schedule C,T or tau_star");
    add_opt(sub, "--reference", inv.reference, "Reference pmf v (same syntax as --pmf)");
  }

  void common_flags(CLI::App* sub) {
    sub->add_flag("--json", inv.json, "Full-precision JSON output");
    sub->add_flag("-v,--verbose", inv.verbosity, "More progress output on stderr");
  }
};

}  // namespace

ParseOutcome parse_invocation(const std::vector<std::string>& args, std::ostream& out,
                              std::ostream& err) {
  Parser p;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    p.app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << p.app.help();
    return {std::nullopt, kOk};
  } catch (const CLI::CallForAllHelp&) {
    out << p.app.help("", CLI::AppFormatMode::All);
    return {std::nullopt, kOk};
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const auto selected = p.app.get_subcommands();
    err << (selected.empty() ? p.app.help() : selected.front()->help());
    return {std::nullopt, kUsage};
  }
  p.inv.subcommand = p.app.get_subcommands().front()->get_name();
  return {p.inv, kOk};
}

int dispatch(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  try {
    if (inv.subcommand == "estimate") return run_estimate(inv, out, err);
    if (inv.subcommand == "trajectory" || inv.subcommand == "rate" ||
        inv.subcommand == "coverage") {
      return run_experiment(inv, out, err);
    }
    if (inv.subcommand == "bounds") return run_bounds(inv, out, err);
    if (inv.subcommand == "lecam") return run_lecam(inv, out, err);
    if (inv.subcommand == "diagnose") return run_diagnose(inv, out, err);
    err << "error: unknown subcommand '" << inv.subcommand << "'\n";
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const ParseOutcome parsed = parse_invocation(args, out, err);
  if (!parsed.invocation) return parsed.exit_code;
  return dispatch(*parsed.invocation, out, err);
}

}  // namespace infalpha::cli
