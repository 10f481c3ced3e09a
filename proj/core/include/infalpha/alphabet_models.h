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
// Ground-truth distributions on the alphabet {1, 2, 3, ...}: finite tables,
// power-law tails and geometric (exponential) tails, with exact entropy,
// analytic tail sums and seeded inverse-CDF sampling.
//
// All entropies are in bits.

#ifndef INFALPHA_ALPHABET_MODELS_H_
#define INFALPHA_ALPHABET_MODELS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace infalpha {

using Symbol = std::uint64_t;

// log2(e); every "log e" factor of the natural-log algebra in bits.
inline constexpr double kLog2E = 1.4426950408889634;

struct Atom {
  Symbol symbol;
  double mass;

  friend bool operator==(const Atom&, const Atom&) = default;
};

enum class PmfKind { kFinite, kPowerTail, kExpTail };

// Two-sided envelope k0 * g(x) <= f(x) <= k1 * g(x) with g(x) = x^-p or
// e^{-alpha x} in the base index x - offset + 1.
struct TailEnvelope {
  double k0;
  double k1;
};

// An immutable probability mass function. Parametric kinds are supported on
// {offset, offset + 1, ...}; the finite kind on an explicit sorted table.
class Pmf {
 public:
  PmfKind kind() const { return kind_; }
  bool has_finite_support() const { return kind_ == PmfKind::kFinite; }

  double mass(Symbol x) const;

  // P(X >= x).
  double tail_mass(Symbol x) const;
  // P(X > x).
  double survival(Symbol x) const;
  // -sum_{y >= x} f(y) log2 f(y).
  double tail_entropy(Symbol x) const;

  // Finite kind only; sorted by symbol, strictly positive masses.
  std::span<const Atom> atoms() const;

  double exponent() const { return p_; }        // power kind
  double decay_rate() const { return alpha_; }  // exp kind
  double normalizer() const { return normalizer_; }
  Symbol support_offset() const { return offset_; }
  TailEnvelope envelope() const;

  // Smallest and largest support symbols (largest is unbounded for the
  // parametric kinds and reported as the maximum Symbol).
  Symbol min_symbol() const;
  Symbol max_symbol() const;

  // Canonical JSON text; used as the source identifier of samples.
  const std::string& id() const { return id_; }

  friend Pmf make_finite_pmf(const std::map<Symbol, double>& weights);
  friend Pmf make_power_tail_pmf(double p, Symbol offset);
  friend Pmf make_exp_tail_pmf(double alpha, Symbol offset);

 private:
  Pmf() = default;
  double base_index(Symbol x) const {
    return static_cast<double>(x - offset_ + 1);
  }

  PmfKind kind_ = PmfKind::kFinite;
  std::vector<Atom> atoms_;
  double p_ = 0.0;
  double alpha_ = 0.0;
  double normalizer_ = 1.0;
  Symbol offset_ = 1;
  std::string id_;
};

// Normalizes nonnegative weights; zero weights are dropped from the support.
// Throws DomainError on negative or non-finite weights and
// InvalidDistribution when no weight is positive.
Pmf make_finite_pmf(const std::map<Symbol, double>& weights);

// f(x) = x^-p / Z with Z = sum_{x >= 1} x^-p. Throws DomainError for p <= 1.
Pmf make_power_tail_pmf(double p, Symbol offset = 1);

// Geometric law f(x) = (e^alpha - 1) e^{-alpha x}. Throws DomainError for
// alpha <= 0.
Pmf make_exp_tail_pmf(double alpha, Symbol offset = 1);

Pmf make_uniform_pmf(std::size_t k);

// Shannon entropy in bits with absolute error at most `tol`. Exact sum for
// the finite kind, closed form for the exp kind, Euler-Maclaurin tail for
// the power kind.
double pmf_entropy(const Pmf& pmf, double tol = 1e-12);

// Entropy of a power-law pmf from an explicit sum over x < depth plus the
// analytic remainder from `depth` onward.
double power_tail_entropy_at_depth(double p, std::uint64_t depth);

struct TailFamily {
  enum class Kind { kPower, kExp };
  Kind kind;
  double parameter;

  static TailFamily power(double p) { return {Kind::kPower, p}; }
  static TailFamily exp(double alpha) { return {Kind::kExp, alpha}; }
};

// Power family: s = sum_{x >= x0} x^-p, r = sum_{x >= x0} x^-p log2 x.
// Exp family:   s = sum_{x >= x0} e^{-alpha x}, r = sum_{x >= x0} x e^{-alpha x}.
// Absolute error at most 1e-12.
struct TailSums {
  double s;
  double r;
};
TailSums tail_sums(Symbol x0, TailFamily family);

struct Sample {
  std::vector<Symbol> symbols;
  std::uint64_t seed = 0;
  std::string source;

  std::size_t size() const { return symbols.size(); }
};

// n i.i.d. draws by inverse CDF. Identical (pmf, n, seed) give identical
// samples. Throws DomainError for n == 0.
Sample sample(const Pmf& pmf, std::size_t n, std::uint64_t seed);

nlohmann::json pmf_to_json(const Pmf& pmf);
// Accepts {"kind":"finite","weights":{...}}, {"kind":"power","p":...} and
// {"kind":"exp","alpha":...}; "offset" is optional for the parametric kinds.
Pmf pmf_from_json(const nlohmann::json& spec);

// Newline-delimited positive integers.
void write_sample(const Sample& s, std::ostream& out);
Sample read_sample(std::istream& in, std::string source = "stream");

}  // namespace infalpha

#endif  // INFALPHA_ALPHABET_MODELS_H_
