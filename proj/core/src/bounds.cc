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
#include "infalpha/bounds.h"

#include <cmath>
#include <map>
#include <numbers>
#include <ostream>

#include "infalpha/errors.h"

namespace infalpha {
namespace {

// ln 2^(k+1).
double log_prefactor(std::size_t k) {
  return (static_cast<double>(k) + 1.0) * std::numbers::ln2;
}

// Lipschitz-type constant M + log2(e)/m of the entropy functional.
double entropy_constant(const SupportStats& s) { return s.M + kLog2E / s.m; }

void check_stats(const SupportStats& s) {
  if (!(s.m > 0.0) || s.m > 1.0 || s.size == 0) {
    throw DomainError("support statistics need 0 < m <= 1 and size >= 1");
  }
}

void check_n(std::size_t n) {
  if (n == 0) throw DomainError("sample size must be at least 1");
}

double beta_for(LeCamSpread spread, std::size_t m) {
  if (m < 2 || (spread == LeCamSpread::kSqrtLogM && m < 3)) {
    throw DomainError("Le Cam construction needs M >= 2 (M >= 3 for the log spread)");
  }
  const double md = static_cast<double>(m);
  return spread == LeCamSpread::kSqrtLogM ? 1.0 / std::sqrt(std::log(md))
                                          : 1.0 / std::sqrt(md);
}

}  // namespace

std::string_view formula_name(BoundFormula f) {
  switch (f) {
    case BoundFormula::kTotalVariation:
      return "total_variation";
    case BoundFormula::kReverseKl:
      return "reverse_kl";
    case BoundFormula::kEntropy:
      return "entropy";
    case BoundFormula::kDirectKl:
      return "direct_kl";
    case BoundFormula::kDataDriven:
      return "data_driven";
  }
  return "unknown";
}

DeviationBound tv_hoeffding(std::size_t k, std::size_t n, double eps) {
  if (k == 0) throw DomainError("support size must be at least 1");
  check_n(n);
  const double nd = static_cast<double>(n);
  return {eps, std::exp(log_prefactor(k) - 2.0 * nd * eps * eps),
          BoundFormula::kTotalVariation};
}

double expected_tv_bound(std::size_t k, std::size_t n) {
  check_n(n);
  return 2.0 * std::sqrt(log_prefactor(k) / static_cast<double>(n));
}

PluginBounds plugin_bounds(const SupportStats& stats, std::size_t n, double eps) {
  check_stats(stats);
  check_n(n);
  const double nd = static_cast<double>(n);
  const double lp = log_prefactor(stats.size);
  const double e2 = eps * eps;
  const double c = entropy_constant(stats);
  const double kl_scale = kLog2E * (1.0 / stats.m + 1.0);

  PluginBounds b{};
  b.reverse_kl = {eps,
                  std::exp(lp - 2.0 * stats.m * stats.m * nd * e2 / (kLog2E * kLog2E)),
                  BoundFormula::kReverseKl};
  b.entropy = {eps, std::exp(lp - 2.0 * nd * e2 / (c * c)), BoundFormula::kEntropy};
  b.direct_kl = {eps,
                 std::exp(lp - 2.0 * nd * e2 / (kl_scale * kl_scale)) +
                     std::exp(lp - nd * stats.m * stats.m),
                 BoundFormula::kDirectKl};
  return b;
}

double plugin_confidence_halfwidth(const SupportStats& stats, std::size_t n,
                                   double delta) {
  check_stats(stats);
  check_n(n);
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw DomainError("confidence level delta must lie in (0, 1)");
  }
  return entropy_constant(stats) *
         std::sqrt((log_prefactor(stats.size) - std::log(delta)) /
                   (2.0 * static_cast<double>(n)));
}

DeviationBound data_driven_finite_support_bound(const SupportStats& stats,
                                                std::size_t n, double eps) {
  check_stats(stats);
  check_n(n);
  const double nd = static_cast<double>(n);
  const double lp = log_prefactor(stats.size);
  const double c = entropy_constant(stats);
  return {eps,
          std::exp(lp - 2.0 * nd * eps * eps / (c * c)) +
              std::exp(lp - nd * stats.m * stats.m / 4.0),
          BoundFormula::kDataDriven};
}

double plugin_expected_error_bound(const SupportStats& stats, std::size_t n) {
  check_stats(stats);
  check_n(n);
  const double nd = static_cast<double>(n);
  const double c = entropy_constant(stats);
  const double lp = log_prefactor(stats.size);
  // The bound crosses 1 at eps*; integrate 1 below it and the Gaussian tail
  // above it.
  const double eps_star = c * std::sqrt(lp / (2.0 * nd));
  const double tail = std::exp(lp) * c * std::sqrt(std::numbers::pi / (8.0 * nd)) *
                      std::erfc(eps_star * std::sqrt(2.0 * nd) / c);
  return eps_star + tail;
}

double LeCamPair::risk_lower_bound(std::size_t n) const {
  return 0.25 * entropy_gap_bits * entropy_gap_bits *
         std::exp(-static_cast<double>(n) * divergence_bits * std::numbers::ln2);
}

LeCamPair lecam_two_point(const FiniteMeasure& p, std::size_t m,
                          LeCamSpread spread) {
  const double p1 = p.atoms().front().mass;
  const double beta = beta_for(spread, m);
  const double md = static_cast<double>(m);
  const double kept = p1 * (1.0 - beta);
  const double w = p1 * beta / md;
  LeCamPair out{};
  out.m = m;
  out.divergence_bits = -p1 * std::log2(1.0 - beta);
  out.entropy_gap_bits =
      -kept * std::log2(kept) + p1 * std::log2(p1) - md * w * std::log2(w);
  return out;
}

FiniteMeasure lecam_alternative(const FiniteMeasure& p, std::size_t m,
                                LeCamSpread spread) {
  const auto atoms = p.atoms();
  const double beta = beta_for(spread, m);
  std::map<Symbol, double> q;
  for (const Atom& a : atoms) q[a.symbol] = a.mass;
  q[atoms.front().symbol] = atoms.front().mass * (1.0 - beta);
  const double w = atoms.front().mass * beta / static_cast<double>(m);
  const Symbol top = atoms.back().symbol;
  for (std::size_t j = 1; j <= m; ++j) q[top + j] = w;
  return FiniteMeasure::normalized(q);
}

void write_bound_curve_csv(const std::vector<BoundCurvePoint>& curve,
                           std::ostream& out) {
  out << "epsilon,bound,empirical_frequency\n";
  const auto old = out.precision(17);
  for (const auto& row : curve) {
    out << row.epsilon << ',' << row.bound << ',' << row.empirical_frequency << '\n';
  }
  out.precision(old);
}

}  // namespace infalpha
