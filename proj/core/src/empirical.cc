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
#include "infalpha/empirical.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "infalpha/errors.h"
#include "series.h"

namespace infalpha {
namespace {

constexpr double kUnderflowMass = 1e-300;
constexpr double kSumTolerance = 1e-12;
// Explicit summation depth for parametric-vs-parametric variation.
constexpr Symbol kParametricDepth = Symbol{1} << 16;

double plogp(double f) { return f < kUnderflowMass ? 0.0 : -f * std::log2(f); }

bool same_law(const Pmf& a, const Pmf& b) { return a.id() == b.id(); }

// E_mu[log2 b(X)] for a parametric mu, b the base index of mu.
double mean_log_index(const Pmf& mu) {
  if (mu.kind() == PmfKind::kPowerTail) {
    return tail_sums(1, TailFamily::power(mu.exponent())).r / mu.normalizer();
  }
  const double k = 1.0 / mu.normalizer();
  const double q = std::exp(-mu.decay_rate());
  series::CompensatedSum acc;
  double head = q;  // e^{-alpha b}
  for (std::uint64_t b = 2; head > 1e-300; ++b) {
    head *= q;
    const double term = k * head * std::log2(static_cast<double>(b));
    acc.add(term);
    if (term < 1e-18 && b > 16) break;
  }
  return acc.value();
}

// E_mu[b(X)], +infinity when it diverges.
double mean_index(const Pmf& mu) {
  if (mu.kind() == PmfKind::kPowerTail) {
    const double p = mu.exponent();
    if (p <= 2.0) return std::numeric_limits<double>::infinity();
    return tail_sums(1, TailFamily::power(p - 1.0)).s / mu.normalizer();
  }
  return -1.0 / std::expm1(-mu.decay_rate());
}

double parametric_kl(const Pmf& mu, const Pmf& nu) {
  if (same_law(mu, nu)) return 0.0;
  if (mu.support_offset() < nu.support_offset()) {
    return std::numeric_limits<double>::infinity();
  }
  if (mu.support_offset() != nu.support_offset()) {
    throw DomainError("KL between parametric laws needs equal support offsets");
  }
  // D = -H(mu) - E_mu[log2 f_nu(X)].
  double cross = 0.0;
  if (nu.kind() == PmfKind::kPowerTail) {
    cross = std::log2(nu.normalizer()) + nu.exponent() * mean_log_index(mu);
  } else {
    const double e_index = mean_index(mu);
    if (std::isinf(e_index)) return e_index;
    cross = -std::log2(std::expm1(nu.decay_rate())) +
            nu.decay_rate() * kLog2E * e_index;
  }
  return std::max(0.0, cross - pmf_entropy(mu));
}

double parametric_tv(const Pmf& mu, const Pmf& nu) {
  if (same_law(mu, nu)) return 0.0;
  const Symbol start = std::min(mu.support_offset(), nu.support_offset());
  const Symbol depth =
      std::max(mu.support_offset(), nu.support_offset()) + kParametricDepth;
  series::CompensatedSum acc;
  for (Symbol x = start; x < depth; ++x) {
    acc.add(std::fabs(mu.mass(x) - nu.mass(x)));
  }
  // Past the depth both likelihood ratios are monotone, so the signed
  // difference no longer changes sign.
  acc.add(std::fabs(mu.tail_mass(depth) - nu.tail_mass(depth)));
  return 0.5 * acc.value();
}

// V between a finite-support measure and any measure: exact on the finite
// support plus the other measure's remaining mass.
double finite_vs_any(std::span<const Atom> atoms, MeasureRef other) {
  series::CompensatedSum diff;
  series::CompensatedSum covered;
  for (const Atom& a : atoms) {
    const double b = other.mass(a.symbol);
    diff.add(std::fabs(a.mass - b));
    covered.add(b);
  }
  diff.add(std::max(0.0, 1.0 - covered.value()));
  return 0.5 * diff.value();
}

double finite_vs_finite(std::span<const Atom> a, std::span<const Atom> b) {
  series::CompensatedSum acc;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].symbol < b[j].symbol)) {
      acc.add(a[i++].mass);
    } else if (i == a.size() || b[j].symbol < a[i].symbol) {
      acc.add(b[j++].mass);
    } else {
      acc.add(std::fabs(a[i++].mass - b[j++].mass));
    }
  }
  return 0.5 * acc.value();
}

// mu(gamma) for any measure.
double set_mass(MeasureRef mu, const SymbolSet& gamma) {
  series::CompensatedSum acc;
  for (Symbol x : gamma) acc.add(mu.mass(x));
  return acc.value();
}

// mu(gamma^c), summed directly on finite support to avoid cancellation.
double complement_mass(MeasureRef mu, const SymbolSet& gamma) {
  if (!mu.has_finite_support()) {
    return std::max(0.0, 1.0 - set_mass(mu, gamma));
  }
  series::CompensatedSum acc;
  for (const Atom& a : mu.atoms()) {
    if (!std::binary_search(gamma.begin(), gamma.end(), a.symbol)) {
      acc.add(a.mass);
    }
  }
  return acc.value();
}

}  // namespace

SymbolSet make_symbol_set(std::vector<Symbol> symbols) {
  std::sort(symbols.begin(), symbols.end());
  symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
  return symbols;
}

FiniteMeasure FiniteMeasure::from_masses(const std::map<Symbol, double>& masses) {
  FiniteMeasure mu;
  series::CompensatedSum total;
  for (const auto& [x, m] : masses) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw InvalidDistribution("mass of symbol " + std::to_string(x) +
                                " must be finite and strictly positive");
    }
    if (x == 0) throw DomainError("alphabet symbols start at 1");
    mu.atoms_.push_back({x, m});
    total.add(m);
  }
  if (mu.atoms_.empty()) throw InvalidDistribution("measure has empty support");
  if (std::fabs(total.value() - 1.0) > kSumTolerance) {
    throw InvalidDistribution("masses sum to " + std::to_string(total.value()) +
                              ", not 1");
  }
  return mu;
}

FiniteMeasure FiniteMeasure::normalized(const std::map<Symbol, double>& weights) {
  return from_pmf(make_finite_pmf(weights));
}

FiniteMeasure FiniteMeasure::from_pmf(const Pmf& pmf) {
  if (!pmf.has_finite_support()) {
    throw DomainError("pmf with infinite support has no finite measure form");
  }
  FiniteMeasure mu;
  const auto atoms = pmf.atoms();
  mu.atoms_.assign(atoms.begin(), atoms.end());
  return mu;
}

double FiniteMeasure::mass(Symbol x) const {
  const auto it = std::lower_bound(
      atoms_.begin(), atoms_.end(), x,
      [](const Atom& a, Symbol s) { return a.symbol < s; });
  return (it != atoms_.end() && it->symbol == x) ? it->mass : 0.0;
}

double FiniteMeasure::mass(const SymbolSet& set) const {
  series::CompensatedSum acc;
  for (Symbol x : set) acc.add(mass(x));
  return acc.value();
}

SymbolSet FiniteMeasure::support() const {
  SymbolSet out;
  out.reserve(atoms_.size());
  for (const Atom& a : atoms_) out.push_back(a.symbol);
  return out;
}

nlohmann::json measure_to_json(const FiniteMeasure& mu) {
  nlohmann::json j = nlohmann::json::object();
  for (const Atom& a : mu.atoms()) j[std::to_string(a.symbol)] = a.mass;
  return j;
}

FiniteMeasure measure_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("measure must be a JSON object");
  std::map<Symbol, double> masses;
  for (const auto& [key, value] : j.items()) {
    if (key.empty() || !std::all_of(key.begin(), key.end(),
                                    [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParseError("bad symbol key '" + key + "'");
    }
    if (!value.is_number()) throw ParseError("mass of '" + key + "' is not a number");
    masses[std::stoull(key)] = value.get<double>();
  }
  return FiniteMeasure::from_masses(masses);
}

bool MeasureRef::has_finite_support() const {
  return finite_ != nullptr || pmf_->has_finite_support();
}

double MeasureRef::mass(Symbol x) const {
  return finite_ != nullptr ? finite_->mass(x) : pmf_->mass(x);
}

std::span<const Atom> MeasureRef::atoms() const {
  return finite_ != nullptr ? finite_->atoms() : pmf_->atoms();
}

const Pmf* MeasureRef::parametric() const {
  return (pmf_ != nullptr && !pmf_->has_finite_support()) ? pmf_ : nullptr;
}

FiniteMeasure empirical_measure(std::span<const Symbol> symbols) {
  if (symbols.empty()) throw DomainError("empirical measure of an empty sample");
  std::vector<Symbol> sorted(symbols.begin(), symbols.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  FiniteMeasure mu;
  mu.n_source_ = sorted.size();
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    mu.atoms_.push_back({sorted[i], static_cast<double>(j - i) / n});
    i = j;
  }
  return mu;
}

FiniteMeasure empirical_measure(const Sample& sample) {
  return empirical_measure(std::span<const Symbol>(sample.symbols));
}

double total_variation(MeasureRef mu, MeasureRef nu) {
  if (mu.has_finite_support() && nu.has_finite_support()) {
    return finite_vs_finite(mu.atoms(), nu.atoms());
  }
  if (mu.has_finite_support()) return finite_vs_any(mu.atoms(), nu);
  if (nu.has_finite_support()) return finite_vs_any(nu.atoms(), mu);
  return parametric_tv(*mu.parametric(), *nu.parametric());
}

double kl_divergence(MeasureRef mu, MeasureRef nu) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (!mu.has_finite_support()) {
    if (nu.has_finite_support()) return kInf;
    return parametric_kl(*mu.parametric(), *nu.parametric());
  }
  series::CompensatedSum acc;
  for (const Atom& a : mu.atoms()) {
    if (a.mass < kUnderflowMass) continue;
    const double b = nu.mass(a.symbol);
    if (b < kUnderflowMass) return kInf;
    acc.add(a.mass * std::log2(a.mass / b));
  }
  return std::max(0.0, acc.value());
}

double entropy(const FiniteMeasure& mu) {
  series::CompensatedSum acc;
  for (const Atom& a : mu.atoms()) acc.add(plogp(a.mass));
  return acc.value();
}

FiniteMeasure conditional(MeasureRef mu, const SymbolSet& gamma) {
  std::map<Symbol, double> kept;
  series::CompensatedSum total;
  for (Symbol x : gamma) {
    const double m = mu.mass(x);
    if (m > 0.0) {
      kept[x] = m;
      total.add(m);
    }
  }
  const double z = total.value();
  if (!(z > 0.0)) {
    throw DegenerateConditioning("conditioning set has zero probability");
  }
  for (auto& [x, m] : kept) m /= z;
  // Renormalization can leave the sum a few ulps away from one.
  return FiniteMeasure::normalized(kept);
}

double restricted_variation(MeasureRef mu, MeasureRef nu, const SymbolSet& gamma) {
  series::CompensatedSum acc;
  for (Symbol x : gamma) acc.add(std::fabs(mu.mass(x) - nu.mass(x)));
  acc.add(std::fabs(complement_mass(mu, gamma) - complement_mass(nu, gamma)));
  return 0.5 * acc.value();
}

SupportStats support_stats(MeasureRef mu) {
  if (!mu.has_finite_support()) {
    throw DomainError("support statistics need a finite-support measure");
  }
  const auto atoms = mu.atoms();
  double m = 1.0;
  for (const Atom& a : atoms) m = std::min(m, a.mass);
  return {m, -std::log2(m), atoms.size()};
}

}  // namespace infalpha
