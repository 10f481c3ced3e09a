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
#include "infalpha/alphabet_models.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "infalpha/errors.h"
#include "series.h"

namespace infalpha {
namespace {

constexpr double kNormalizerTol = 1e-15;

std::string canonical_id(const nlohmann::json& spec) { return spec.dump(); }

// Inverse-CDF sampler over a cumulative table that grows by doubling. Past
// kTableCap entries the parametric tail is inverted by bisection on the
// analytic survival function.
class InverseCdfSampler {
 public:
  explicit InverseCdfSampler(const Pmf& pmf) : pmf_(pmf) {
    if (pmf_.has_finite_support()) {
      const auto atoms = pmf_.atoms();
      cdf_.reserve(atoms.size());
      series::CompensatedSum acc;
      for (const Atom& a : atoms) {
        acc.add(a.mass);
        cdf_.push_back(acc.value());
      }
    } else {
      extend(64);
    }
  }

  Symbol draw(double u) {
    if (pmf_.has_finite_support()) {
      const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
      const auto idx = std::min<std::size_t>(
          static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
      return pmf_.atoms()[idx].symbol;
    }
    while (u >= cdf_.back() && cdf_.size() < kTableCap) {
      extend(cdf_.size() * 2);
    }
    if (u < cdf_.back()) {
      const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
      return pmf_.support_offset() + static_cast<Symbol>(it - cdf_.begin());
    }
    return invert_tail(1.0 - u);
  }

 private:
  static constexpr std::size_t kTableCap = std::size_t{1} << 20;

  void extend(std::size_t new_size) {
    new_size = std::min(new_size, kTableCap);
    cdf_.reserve(new_size);
    while (cdf_.size() < new_size) {
      const Symbol x = pmf_.support_offset() + cdf_.size();
      acc_.add(pmf_.mass(x));
      cdf_.push_back(acc_.value());
    }
  }

  // Smallest x beyond the table with P(X > x) <= r.
  Symbol invert_tail(double r) const {
    constexpr Symbol kLimit = Symbol{1} << 62;
    Symbol lo = pmf_.support_offset() + cdf_.size() - 1;  // P(X > lo) > r
    Symbol hi = lo;
    do {
      lo = hi;
      hi = (hi >= kLimit / 2) ? kLimit : hi * 2;
    } while (hi < kLimit && pmf_.survival(hi) > r);
    while (hi - lo > 1) {
      const Symbol mid = lo + (hi - lo) / 2;
      if (pmf_.survival(mid) > r) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return hi;
  }

  const Pmf& pmf_;
  std::vector<double> cdf_;
  series::CompensatedSum acc_;
};

double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

double Pmf::mass(Symbol x) const {
  switch (kind_) {
    case PmfKind::kFinite: {
      const auto it = std::lower_bound(
          atoms_.begin(), atoms_.end(), x,
          [](const Atom& a, Symbol s) { return a.symbol < s; });
      return (it != atoms_.end() && it->symbol == x) ? it->mass : 0.0;
    }
    case PmfKind::kPowerTail:
      if (x < offset_) return 0.0;
      return std::pow(base_index(x), -p_) / normalizer_;
    case PmfKind::kExpTail:
      if (x < offset_) return 0.0;
      return std::exp(-alpha_ * base_index(x)) / normalizer_;
  }
  return 0.0;
}

double Pmf::tail_mass(Symbol x) const {
  switch (kind_) {
    case PmfKind::kFinite: {
      series::CompensatedSum acc;
      for (const Atom& a : atoms_) {
        if (a.symbol >= x) acc.add(a.mass);
      }
      return acc.value();
    }
    case PmfKind::kPowerTail: {
      if (x <= offset_) return 1.0;
      const auto b = static_cast<std::uint64_t>(x - offset_ + 1);
      return series::power_sums(p_, b).s / normalizer_;
    }
    case PmfKind::kExpTail:
      if (x <= offset_) return 1.0;
      return std::exp(-alpha_ * (base_index(x) - 1.0));
  }
  return 0.0;
}

double Pmf::survival(Symbol x) const {
  if (x == std::numeric_limits<Symbol>::max()) return 0.0;
  return tail_mass(x + 1);
}

double Pmf::tail_entropy(Symbol x) const {
  switch (kind_) {
    case PmfKind::kFinite: {
      series::CompensatedSum acc;
      for (const Atom& a : atoms_) {
        if (a.symbol >= x) acc.add(-a.mass * std::log2(a.mass));
      }
      return acc.value();
    }
    case PmfKind::kPowerTail: {
      const auto b = static_cast<std::uint64_t>(x <= offset_ ? 1 : x - offset_ + 1);
      const auto sums = series::power_sums(p_, b);
      return (std::log2(normalizer_) * sums.s + p_ * kLog2E * sums.r) /
             normalizer_;
    }
    case PmfKind::kExpTail: {
      const auto b = static_cast<std::uint64_t>(x <= offset_ ? 1 : x - offset_ + 1);
      const auto sums = series::geometric_sums(alpha_, b);
      const double k = 1.0 / normalizer_;
      return k * (-std::log2(k) * sums.s + alpha_ * kLog2E * sums.r);
    }
  }
  return 0.0;
}

std::span<const Atom> Pmf::atoms() const {
  if (kind_ != PmfKind::kFinite) {
    throw DomainError("atoms() requires a finite-support pmf");
  }
  return atoms_;
}

TailEnvelope Pmf::envelope() const {
  if (kind_ == PmfKind::kFinite) {
    throw DomainError("tail envelope is defined for parametric pmfs only");
  }
  return {1.0 / normalizer_, 1.0 / normalizer_};
}

Symbol Pmf::min_symbol() const {
  return kind_ == PmfKind::kFinite ? atoms_.front().symbol : offset_;
}

Symbol Pmf::max_symbol() const {
  return kind_ == PmfKind::kFinite ? atoms_.back().symbol
                                   : std::numeric_limits<Symbol>::max();
}

Pmf make_finite_pmf(const std::map<Symbol, double>& weights) {
  series::CompensatedSum total;
  for (const auto& [x, w] : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw DomainError("weight for symbol " + std::to_string(x) +
                        " must be finite and nonnegative");
    }
    if (x == 0) throw DomainError("alphabet symbols start at 1");
    total.add(w);
  }
  const double z = total.value();
  if (!(z > 0.0)) {
    throw InvalidDistribution("at least one weight must be strictly positive");
  }
  Pmf pmf;
  pmf.kind_ = PmfKind::kFinite;
  nlohmann::json table = nlohmann::json::object();
  for (const auto& [x, w] : weights) {
    if (w > 0.0) {
      pmf.atoms_.push_back({x, w / z});
      table[std::to_string(x)] = w / z;
    }
  }
  pmf.id_ = canonical_id({{"kind", "finite"}, {"weights", table}});
  return pmf;
}

Pmf make_power_tail_pmf(double p, Symbol offset) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw DomainError("power-tail exponent must satisfy p > 1");
  }
  if (offset == 0) throw DomainError("alphabet symbols start at 1");
  Pmf pmf;
  pmf.kind_ = PmfKind::kPowerTail;
  pmf.p_ = p;
  pmf.offset_ = offset;
  pmf.normalizer_ = series::power_sums(p, 1, kNormalizerTol).s;
  nlohmann::json spec = {{"kind", "power"}, {"p", p}};
  if (offset != 1) spec["offset"] = offset;
  pmf.id_ = canonical_id(spec);
  return pmf;
}

Pmf make_exp_tail_pmf(double alpha, Symbol offset) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("exp-tail decay rate must satisfy alpha > 0");
  }
  if (offset == 0) throw DomainError("alphabet symbols start at 1");
  Pmf pmf;
  pmf.kind_ = PmfKind::kExpTail;
  pmf.alpha_ = alpha;
  pmf.offset_ = offset;
  // Z = sum_{x >= 1} e^{-alpha x} = 1 / (e^alpha - 1).
  pmf.normalizer_ = 1.0 / std::expm1(alpha);
  nlohmann::json spec = {{"kind", "exp"}, {"alpha", alpha}};
  if (offset != 1) spec["offset"] = offset;
  pmf.id_ = canonical_id(spec);
  return pmf;
}

Pmf make_uniform_pmf(std::size_t k) {
  if (k == 0) throw DomainError("uniform pmf needs at least one symbol");
  std::map<Symbol, double> w;
  for (Symbol x = 1; x <= k; ++x) w[x] = 1.0;
  return make_finite_pmf(w);
}

double pmf_entropy(const Pmf& pmf, double tol) {
  if (!(tol > 0.0)) throw DomainError("entropy tolerance must be positive");
  switch (pmf.kind()) {
    case PmfKind::kFinite: {
      series::CompensatedSum acc;
      for (const Atom& a : pmf.atoms()) acc.add(-a.mass * std::log2(a.mass));
      return acc.value();
    }
    case PmfKind::kExpTail: {
      // H = -log2 K + alpha log2(e) E[X], K = e^alpha - 1, E[X] = 1/(1-e^-alpha).
      const double alpha = pmf.decay_rate();
      return -std::log2(std::expm1(alpha)) -
             alpha * kLog2E / std::expm1(-alpha);
    }
    case PmfKind::kPowerTail: {
      const double p = pmf.exponent();
      const double z = pmf.normalizer();
      const auto sums = series::power_sums(p, 1, std::min(1e-14, tol * 0.01));
      return std::log2(z) + p * kLog2E * sums.r / z;
    }
  }
  return 0.0;
}

double power_tail_entropy_at_depth(double p, std::uint64_t depth) {
  const Pmf pmf = make_power_tail_pmf(p);
  const double z = pmf.normalizer();
  series::CompensatedSum acc;
  for (std::uint64_t x = 1; x < depth; ++x) {
    const double f = pmf.mass(x);
    acc.add(-f * std::log2(f));
  }
  const auto rest = series::power_sums(p, std::max<std::uint64_t>(depth, 1));
  acc.add((std::log2(z) * rest.s + p * kLog2E * rest.r) / z);
  return acc.value();
}

TailSums tail_sums(Symbol x0, TailFamily family) {
  if (x0 == 0) throw DomainError("tail sums start at x0 >= 1");
  if (family.kind == TailFamily::Kind::kPower) {
    if (!(family.parameter > 1.0)) {
      throw DomainError("power tail sums need p > 1");
    }
    const auto sums = series::power_sums(family.parameter, x0, 1e-14);
    return {sums.s, sums.r * kLog2E};
  }
  if (!(family.parameter > 0.0)) {
    throw DomainError("geometric tail sums need alpha > 0");
  }
  const auto sums = series::geometric_sums(family.parameter, x0);
  return {sums.s, sums.r};
}

Sample sample(const Pmf& pmf, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("sample size must be at least 1");
  std::mt19937_64 gen(seed);
  InverseCdfSampler sampler(pmf);
  Sample out;
  out.seed = seed;
  out.source = pmf.id();
  out.symbols.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.symbols.push_back(sampler.draw(uniform01(gen)));
  }
  return out;
}

nlohmann::json pmf_to_json(const Pmf& pmf) {
  return nlohmann::json::parse(pmf.id());
}

Pmf pmf_from_json(const nlohmann::json& spec) {
  try {
    const std::string kind = spec.at("kind").get<std::string>();
    const Symbol offset = spec.value("offset", Symbol{1});
    if (kind == "finite") {
      std::map<Symbol, double> weights;
      for (const auto& [key, value] : spec.at("weights").items()) {
        std::size_t used = 0;
        const unsigned long long x = std::stoull(key, &used);
        if (used != key.size()) throw DomainError("bad symbol key '" + key + "'");
        weights[x] = value.get<double>();
      }
      return make_finite_pmf(weights);
    }
    if (kind == "power") return make_power_tail_pmf(spec.at("p").get<double>(), offset);
    if (kind == "exp") return make_exp_tail_pmf(spec.at("alpha").get<double>(), offset);
    throw ConfigError("unknown pmf kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed pmf spec: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw ConfigError("malformed symbol key in pmf weights");
  } catch (const std::out_of_range&) {
    throw ConfigError("symbol key out of range in pmf weights");
  }
}

void write_sample(const Sample& s, std::ostream& out) {
  for (Symbol x : s.symbols) out << x << '\n';
}

Sample read_sample(std::istream& in, std::string source) {
  Sample s;
  s.source = std::move(source);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);
    Symbol x = 0;
    bool ok = !token.empty() &&
              std::all_of(token.begin(), token.end(),
                          [](char c) { return c >= '0' && c <= '9'; });
    if (ok) {
      try {
        x = std::stoull(token);
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok || x == 0) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected a positive integer symbol, got '" + token + "'");
    }
    s.symbols.push_back(x);
  }
  return s;
}

}  // namespace infalpha
