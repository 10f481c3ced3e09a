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
// Finite-support measures, the empirical measure, and the functionals used
// throughout: total variation, KL divergence, entropy, conditioning and
// variation restricted to the sigma-field generated by a finite symbol set.

#ifndef INFALPHA_EMPIRICAL_H_
#define INFALPHA_EMPIRICAL_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "infalpha/alphabet_models.h"

namespace infalpha {

// Sorted, duplicate-free list of symbols.
using SymbolSet = std::vector<Symbol>;
SymbolSet make_symbol_set(std::vector<Symbol> symbols);

// A probability measure with finite support. Masses are strictly positive
// and sum to one within 1e-12.
class FiniteMeasure {
 public:
  // Throws InvalidDistribution unless every mass is positive and the total is
  // within 1e-12 of one.
  static FiniteMeasure from_masses(const std::map<Symbol, double>& masses);
  // Rescales nonnegative weights; zero weights are dropped.
  static FiniteMeasure normalized(const std::map<Symbol, double>& weights);
  static FiniteMeasure from_pmf(const Pmf& pmf);

  double mass(Symbol x) const;
  double mass(const SymbolSet& set) const;
  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t support_size() const { return atoms_.size(); }
  SymbolSet support() const;
  bool contains(Symbol x) const { return mass(x) > 0.0; }

  // Sample size for empirical measures.
  std::optional<std::size_t> n_source() const { return n_source_; }

  friend bool operator==(const FiniteMeasure&, const FiniteMeasure&) = default;

  friend FiniteMeasure empirical_measure(std::span<const Symbol> symbols);

 private:
  FiniteMeasure() = default;

  std::vector<Atom> atoms_;
  std::optional<std::size_t> n_source_;
};

// {"<symbol>": mass, ...}
nlohmann::json measure_to_json(const FiniteMeasure& mu);
FiniteMeasure measure_from_json(const nlohmann::json& j);

// Non-owning view over either a FiniteMeasure or a Pmf.
class MeasureRef {
 public:
  MeasureRef(const FiniteMeasure& mu) : finite_(&mu) {}  // NOLINT
  MeasureRef(const Pmf& pmf) : pmf_(&pmf) {}             // NOLINT

  bool has_finite_support() const;
  double mass(Symbol x) const;
  // Finite support only.
  std::span<const Atom> atoms() const;
  // Parametric Pmf, or nullptr.
  const Pmf* parametric() const;

 private:
  const FiniteMeasure* finite_ = nullptr;
  const Pmf* pmf_ = nullptr;
};

// mass(x) = count(x) / n. Throws DomainError on an empty sample.
FiniteMeasure empirical_measure(std::span<const Symbol> symbols);
FiniteMeasure empirical_measure(const Sample& sample);

// Half the L1 distance. A parametric argument is summed exactly over the
// other measure's support and its remaining mass folded in analytically.
double total_variation(MeasureRef mu, MeasureRef nu);

// D(mu || nu) in bits; +infinity when mu is not absolutely continuous with
// respect to nu.
double kl_divergence(MeasureRef mu, MeasureRef nu);

double entropy(const FiniteMeasure& mu);

// mu(. | gamma). Throws DegenerateConditioning when mu(gamma) = 0.
FiniteMeasure conditional(MeasureRef mu, const SymbolSet& gamma);

// Variation on the sigma-field generated by {{x} : x in gamma} and the
// complement of gamma.
double restricted_variation(MeasureRef mu, MeasureRef nu, const SymbolSet& gamma);

struct SupportStats {
  double m;          // smallest support mass
  double M;          // -log2 m, bits
  std::size_t size;  // support cardinality
};

// Throws DomainError for infinite support.
SupportStats support_stats(MeasureRef mu);

}  // namespace infalpha

#endif  // INFALPHA_EMPIRICAL_H_
