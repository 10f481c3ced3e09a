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
#include "infalpha/estimators.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "infalpha/errors.h"
#include "series.h"

namespace infalpha {
namespace {

// Ranges shorter than this are summed symbol by symbol instead of by
// differencing analytic tails.
constexpr Symbol kExplicitRange = Symbol{1} << 16;

void require_probability(double value, const char* what, bool allow_one) {
  if (!(value > 0.0) || value > 1.0 || (!allow_one && value == 1.0)) {
    throw DomainError(std::string(what) + " must lie in (0, 1" +
                      (allow_one ? "]" : ")") + ", got " + std::to_string(value));
  }
}

void require_in_support(const FiniteMeasure& empirical, const Pmf& v) {
  for (const Atom& a : empirical.atoms()) {
    if (!(v.mass(a.symbol) > 0.0)) {
      throw AbsoluteContinuityViolation(
          "symbol " + std::to_string(a.symbol) +
          " is outside the support of the reference measure");
    }
  }
}

double range_mass(const Pmf& v, Symbol first, std::optional<Symbol> last) {
  if (!last) return v.tail_mass(first);
  if (v.has_finite_support() || *last - first < kExplicitRange) {
    series::CompensatedSum acc;
    if (v.has_finite_support()) {
      for (const Atom& a : v.atoms()) {
        if (a.symbol >= first && a.symbol <= *last) acc.add(a.mass);
      }
    } else {
      for (Symbol x = first; x <= *last; ++x) acc.add(v.mass(x));
    }
    return acc.value();
  }
  return v.tail_mass(first) - v.tail_mass(*last + 1);
}

// -sum over the range of f_v log2 f_v.
double range_entropy(const Pmf& v, Symbol first, std::optional<Symbol> last) {
  if (!last) return v.tail_entropy(first);
  if (v.has_finite_support() || *last - first < kExplicitRange) {
    series::CompensatedSum acc;
    if (v.has_finite_support()) {
      for (const Atom& a : v.atoms()) {
        if (a.symbol >= first && a.symbol <= *last) {
          acc.add(-a.mass * std::log2(a.mass));
        }
      }
    } else {
      for (Symbol x = first; x <= *last; ++x) {
        const double f = v.mass(x);
        if (f > 0.0) acc.add(-f * std::log2(f));
      }
    }
    return acc.value();
  }
  return v.tail_entropy(first) - v.tail_entropy(*last + 1);
}

// Greedy cut points over an abstract index space. `suffix(i)` is the mass of
// items i, i+1, ...; `find_end(s, remaining)` returns the first e whose block
// s..e reaches h, together with suffix(e + 1).
template <typename Suffix, typename Find>
std::vector<std::pair<std::size_t, std::optional<std::size_t>>> greedy_cells(
    double h, std::size_t begin, Suffix suffix, Find find_end) {
  std::vector<std::pair<std::size_t, std::optional<std::size_t>>> out;
  std::size_t s = begin;
  while (true) {
    const double remaining = suffix(s);
    if (remaining < 2.0 * h) break;
    const auto [e, after] = find_end(s, remaining);
    if (after < h) break;
    out.emplace_back(s, e);
    s = e + 1;
  }
  out.emplace_back(s, std::nullopt);
  return out;
}

}  // namespace

double Schedule::operator()(std::size_t n) const {
  if (n == 0) throw DomainError("schedules are indexed from n = 1");
  return t_ == 0.0 ? c_ : c_ * std::pow(static_cast<double>(n), -t_);
}

Schedule make_schedule(ScheduleRole role, double coefficient, double exponent) {
  if (!(coefficient > 0.0) || !std::isfinite(coefficient)) {
    throw DomainError("schedule coefficient must be positive");
  }
  if (!(exponent >= 0.0) || !std::isfinite(exponent)) {
    throw DomainError("schedule exponent must be nonnegative");
  }
  const bool allow_one = role == ScheduleRole::kMixture;
  // The largest value in use is at n = 1 (for the mixture weight) or n = 2.
  require_probability(coefficient * (allow_one ? 1.0 : std::pow(2.0, -exponent)),
                      "schedule value", allow_one);
  if (exponent == 0.0) return Schedule::constant(coefficient);
  return Schedule::power_decay(coefficient, exponent);
}

double power_tail_threshold_exponent(double p) {
  if (!(p > 1.0)) throw DomainError("power-tail exponent must satisfy p > 1");
  return 1.0 / (2.0 + 1.0 / p);
}

double power_tail_rate_exponent(double p) {
  return (1.0 - 1.0 / p) * power_tail_threshold_exponent(p);
}

BgmScheduleCheck check_bgm_schedule(const Schedule& a, const Schedule& h,
                                    double tau) {
  BgmScheduleCheck out{};
  const double ta = a.exponent();
  const double th = h.exponent();
  out.vanishing = ta > 0.0 && th > 0.0;
  // 1/(a_n h_n) grows like n^(ta + th).
  out.rate_condition = tau > 0.0 && tau < 0.5 && ta + th < tau;
  const double growth = ta + th;
  out.corollary_condition =
      growth < 1.0 ||
      (growth == 1.0 && 1.0 / (a.coefficient() * h.coefficient()) <= 1.0);
  return out;
}

std::size_t Partition::cell_index(Symbol x) const {
  const auto it = std::upper_bound(
      cells_.begin(), cells_.end(), x,
      [](Symbol s, const Cell& c) { return s < c.first; });
  return it == cells_.begin() ? 0 : static_cast<std::size_t>(it - cells_.begin()) - 1;
}

Partition build_bgm_partition(const Pmf& v, double h) {
  if (!(h > 0.0) || !(h < 1.0)) {
    throw DomainError("partition threshold h must lie in (0, 1)");
  }
  Partition part;
  part.reference_id_ = v.id();

  if (v.has_finite_support()) {
    const auto atoms = v.atoms();
    const std::size_t k = atoms.size();
    std::vector<double> suffix(k + 1, 0.0);
    {
      series::CompensatedSum acc;
      for (std::size_t i = k; i-- > 0;) {
        acc.add(atoms[i].mass);
        suffix[i] = acc.value();
      }
    }
    auto find_end = [&](std::size_t s, double) {
      series::CompensatedSum c;
      std::size_t e = s;
      for (; e < k; ++e) {
        c.add(atoms[e].mass);
        if (c.value() >= h) break;
      }
      e = std::min(e, k - 1);
      return std::pair<std::size_t, double>(e, suffix[e + 1]);
    };
    const auto runs = greedy_cells(
        h, 0, [&](std::size_t i) { return suffix[i]; }, find_end);
    Symbol first = 1;
    for (const auto& [s, e] : runs) {
      Cell cell{first, std::nullopt, 0.0};
      if (e) {
        cell.last = atoms[*e].symbol;
        cell.reference_mass = suffix[s] - suffix[*e + 1];
        first = *cell.last + 1;
      } else {
        cell.reference_mass = suffix[std::min(s, k)];
      }
      part.cells_.push_back(cell);
    }
    return part;
  }

  // Parametric reference: items are symbols, found by search on the tail.
  auto suffix = [&](std::size_t x) { return v.tail_mass(static_cast<Symbol>(x)); };
  auto find_end = [&](std::size_t s, double remaining) {
    const double target = remaining - h;  // need tail(e + 1) <= target
    auto ok = [&](Symbol e) { return v.tail_mass(e + 1) <= target; };
    Symbol lo = s;
    Symbol step = 1;
    Symbol hi = s;
    while (!ok(hi)) {
      lo = hi + 1;
      hi = s + step;
      step *= 2;
    }
    while (lo < hi) {
      const Symbol mid = lo + (hi - lo) / 2;
      if (ok(mid)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return std::pair<std::size_t, double>(hi, v.tail_mass(hi + 1));
  };
  const auto runs = greedy_cells(h, 1, suffix, find_end);
  for (const auto& [s, e] : runs) {
    Cell cell{static_cast<Symbol>(s), std::nullopt, 0.0};
    if (e) cell.last = static_cast<Symbol>(*e);
    cell.reference_mass = range_mass(v, cell.first, cell.last);
    part.cells_.push_back(cell);
  }
  return part;
}

double CellMixture::mass(Symbol x, const Pmf& v) const {
  const double f = v.mass(x);
  if (f == 0.0) return 0.0;
  const std::size_t i = partition.cell_index(x);
  return f * cell_weights[i] / partition.cells()[i].reference_mass;
}

std::string_view estimator_name(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::kPlugin:
      return "plugin";
    case EstimatorKind::kBarron:
      return "barron";
    case EstimatorKind::kBgm:
      return "bgm";
    case EstimatorKind::kDataDriven:
      return "data_driven";
  }
  return "unknown";
}

EstimatorKind parse_estimator_kind(std::string_view name) {
  for (auto kind : {EstimatorKind::kPlugin, EstimatorKind::kBarron,
                    EstimatorKind::kBgm, EstimatorKind::kDataDriven}) {
    if (estimator_name(kind) == name) return kind;
  }
  throw ConfigError("unknown estimator '" + std::string(name) + "'");
}

EstimatorResult plugin_entropy(const Sample& sample) {
  return plugin_entropy(empirical_measure(sample));
}

EstimatorResult plugin_entropy(const FiniteMeasure& empirical) {
  EstimatorResult r;
  r.kind = EstimatorKind::kPlugin;
  r.entropy_bits = entropy(empirical);
  r.support_used = empirical.support();
  r.measure = empirical;
  return r;
}

EstimatorResult barron_mixture(const Sample& sample, const Pmf& v, double a) {
  return barron_mixture(empirical_measure(sample), v, a);
}

EstimatorResult barron_mixture(const FiniteMeasure& empirical, const Pmf& v,
                               double a) {
  require_probability(a, "mixture weight a", true);
  if (!v.has_finite_support()) {
    throw DomainError("the mixture estimator needs a finite-support reference");
  }
  require_in_support(empirical, v);
  std::map<Symbol, double> masses;
  for (const Atom& atom : v.atoms()) {
    masses[atom.symbol] = (1.0 - a) * empirical.mass(atom.symbol) + a * atom.mass;
  }
  FiniteMeasure mixture = FiniteMeasure::normalized(masses);
  EstimatorResult r;
  r.kind = EstimatorKind::kBarron;
  r.entropy_bits = entropy(mixture);
  r.support_used = mixture.support();
  r.schedule.a = a;
  r.measure = std::move(mixture);
  return r;
}

EstimatorResult bgm_estimate(const Sample& sample, const Pmf& v, double a,
                             double h) {
  return bgm_estimate(empirical_measure(sample), v, a, h);
}

EstimatorResult bgm_estimate(const FiniteMeasure& empirical, const Pmf& v,
                             double a, double h) {
  EstimatorResult r = bgm_estimate(empirical, v, a, build_bgm_partition(v, h));
  r.schedule.h = h;
  return r;
}

EstimatorResult bgm_estimate(const FiniteMeasure& empirical, const Pmf& v,
                             double a, const Partition& partition) {
  require_probability(a, "mixture weight a", true);
  if (partition.reference_id() != v.id()) {
    throw DomainError("partition was built for a different reference measure");
  }
  require_in_support(empirical, v);

  const auto& cells = partition.cells();
  std::vector<double> hits(cells.size(), 0.0);
  for (const Atom& atom : empirical.atoms()) {
    hits[partition.cell_index(atom.symbol)] += atom.mass;
  }

  CellMixture mixture{partition, {}};
  mixture.cell_weights.reserve(cells.size());
  series::CompensatedSum h_total;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double w = cells[i].reference_mass;
    const double c = (1.0 - a) * hits[i] + a * w;
    mixture.cell_weights.push_back(c);
    // Within the cell the estimate is v rescaled by c / w.
    const double h_cell = range_entropy(v, cells[i].first, cells[i].last);
    h_total.add(c * std::log2(w / c) + (c / w) * h_cell);
  }

  EstimatorResult r;
  r.kind = EstimatorKind::kBgm;
  r.entropy_bits = h_total.value();
  r.support_used = empirical.support();
  r.schedule.a = a;
  r.measure = std::move(mixture);
  return r;
}

SymbolSet threshold_set(const FiniteMeasure& mu, double eps) {
  SymbolSet gamma;
  for (const Atom& a : mu.atoms()) {
    if (a.mass >= eps) gamma.push_back(a.symbol);
  }
  return gamma;
}

EstimatorResult data_driven_estimate(const Sample& sample, double eps) {
  return data_driven_estimate(empirical_measure(sample), eps);
}

EstimatorResult data_driven_estimate(const FiniteMeasure& empirical, double eps) {
  require_probability(eps, "threshold eps", true);
  EstimatorResult r;
  r.kind = EstimatorKind::kDataDriven;
  r.schedule.eps = eps;
  r.support_used = threshold_set(empirical, eps);
  if (r.support_used.empty()) {
    r.degenerate = true;
    return r;
  }
  FiniteMeasure cond = conditional(empirical, r.support_used);
  r.entropy_bits = entropy(cond);
  r.measure = std::move(cond);
  return r;
}

}  // namespace infalpha
