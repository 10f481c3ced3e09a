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
// Closed-form finite-sample deviation bounds for plug-in estimates on a
// finite support, the confidence half-width they imply, and a Le Cam
// two-point construction showing that no uniform risk bound exists on an
// infinite alphabet.
//
// Bounds are returned as computed; values above 1 are vacuous but kept.

#ifndef INFALPHA_BOUNDS_H_
#define INFALPHA_BOUNDS_H_

#include <cstddef>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "infalpha/empirical.h"

namespace infalpha {

enum class BoundFormula {
  kTotalVariation,
  kReverseKl,     // P(D(mu_n || mu) > eps)
  kEntropy,       // P(|H(mu_n) - H(mu)| > eps)
  kDirectKl,      // P(D(mu || mu_n) > eps)
  kDataDriven,    // data-driven estimator on finite support
};
std::string_view formula_name(BoundFormula f);

struct DeviationBound {
  double epsilon;
  double probability_bound;
  BoundFormula formula;
};

// P(V(mu_n, mu) > eps) <= 2^(k+1) e^(-2 n eps^2).
DeviationBound tv_hoeffding(std::size_t k, std::size_t n, double eps);
// E V(mu_n, mu) <= 2 sqrt((k + 1) ln 2 / n).
double expected_tv_bound(std::size_t k, std::size_t n);

struct PluginBounds {
  DeviationBound reverse_kl;
  DeviationBound entropy;
  DeviationBound direct_kl;
};
PluginBounds plugin_bounds(const SupportStats& stats, std::size_t n, double eps);

// (M + log2(e)/m) sqrt(ln(2^(k+1)/delta) / (2n)).
double plugin_confidence_halfwidth(const SupportStats& stats, std::size_t n,
                                   double delta);

DeviationBound data_driven_finite_support_bound(const SupportStats& stats,
                                                std::size_t n, double eps);

// Integral over eps of min(1, entropy bound): an upper bound on
// E|H(mu_n) - H(mu)|.
double plugin_expected_error_bound(const SupportStats& stats, std::size_t n);

// How the mass removed from the first atom of P is spread over M new atoms.
enum class LeCamSpread {
  kSqrtLogM,  // remove p1 / sqrt(ln M); needs M >= 3
  kSqrtM,     // remove p1 / sqrt(M)
};

struct LeCamPair {
  double divergence_bits;   // D(P || Q_M)
  double entropy_gap_bits;  // H(Q_M) - H(P)
  std::size_t m;

  // 1/4 gap^2 exp(-n D ln 2).
  double risk_lower_bound(std::size_t n) const;
};

// Q_M takes the share beta p1 from the first atom of P and spreads it evenly
// over M fresh symbols above the support of P. Divergence and gap are
// evaluated in closed form, so M may be large.
LeCamPair lecam_two_point(const FiniteMeasure& p, std::size_t m,
                          LeCamSpread spread = LeCamSpread::kSqrtLogM);
// Q_M itself; intended for moderate M.
FiniteMeasure lecam_alternative(const FiniteMeasure& p, std::size_t m,
                                LeCamSpread spread = LeCamSpread::kSqrtLogM);

// One row of a bound-vs-empirical curve.
struct BoundCurvePoint {
  double epsilon;
  double bound;
  double empirical_frequency;
};
// CSV with header epsilon,bound,empirical_frequency.
void write_bound_curve_csv(const std::vector<BoundCurvePoint>& curve,
                           std::ostream& out);

}  // namespace infalpha

#endif  // INFALPHA_BOUNDS_H_
