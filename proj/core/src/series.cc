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
#include "series.h"

#include <algorithm>
#include <cmath>

namespace infalpha::series {
namespace {

// k-th derivative of x^-p (ln x)^j is x^{-p-k} (c_k ln x + d_k).
struct DerivativeCoefficients {
  double c;
  double d;
};

DerivativeCoefficients derivative(double p, int order, bool with_log) {
  double c = with_log ? 1.0 : 0.0;
  double d = with_log ? 0.0 : 1.0;
  for (int k = 0; k < order; ++k) {
    const double f = -p - k;
    const double next_d = f * d + c;
    c *= f;
    d = next_d;
  }
  return {c, d};
}

double derivative_at(double p, int order, bool with_log, double x) {
  const auto [c, d] = derivative(p, order, with_log);
  return std::pow(x, -p - order) * (c * std::log(x) + d);
}

// sum_{x >= a} g(x) by Euler-Maclaurin with Bernoulli terms up to B6.
double euler_maclaurin_tail(double p, double a, bool with_log) {
  const double pm1 = p - 1.0;
  const double head = std::pow(a, 1.0 - p);
  const double integral =
      with_log ? head * (std::log(a) / pm1 + 1.0 / (pm1 * pm1)) : head / pm1;
  const double g0 = derivative_at(p, 0, with_log, a);
  const double g1 = derivative_at(p, 1, with_log, a);
  const double g3 = derivative_at(p, 3, with_log, a);
  const double g5 = derivative_at(p, 5, with_log, a);
  return integral + g0 / 2.0 - g1 / 12.0 + g3 / 720.0 - g5 / 30240.0;
}

constexpr double kMaxCut = 16777216.0;  // 2^24

}  // namespace

double power_tail_remainder_bound(double p, double cut) {
  // |B8| / 8! = 1 / 1209600; a factor 2 absorbs the sign-alternation slack.
  const double s7 = std::abs(derivative_at(p, 7, false, cut));
  const double r7 = std::abs(derivative_at(p, 7, true, cut));
  return 2.0 * std::max(s7, r7) / 1209600.0;
}

PowerSums power_sums(double p, std::uint64_t x0, double tol) {
  double cut = 16.0;
  while (cut < kMaxCut && power_tail_remainder_bound(p, cut) > tol) cut *= 2.0;
  const double start = static_cast<double>(std::max<std::uint64_t>(x0, 1));
  if (start >= cut) {
    return {euler_maclaurin_tail(p, start, false),
            euler_maclaurin_tail(p, start, true)};
  }
  // Explicit terms from the smallest upward to the largest; summed from the
  // small end so the compensated accumulator sees comparable magnitudes.
  CompensatedSum s;
  CompensatedSum r;
  s.add(euler_maclaurin_tail(p, cut, false));
  r.add(euler_maclaurin_tail(p, cut, true));
  const auto last = static_cast<std::uint64_t>(cut) - 1;
  for (std::uint64_t x = last; x >= x0 && x >= 1; --x) {
    const double xd = static_cast<double>(x);
    const double term = std::pow(xd, -p);
    s.add(term);
    r.add(term * std::log(xd));
    if (x == 1) break;
  }
  return {s.value(), r.value()};
}

GeometricSums geometric_sums(double alpha, std::uint64_t x0) {
  const double one_minus_q = -std::expm1(-alpha);
  const double q = std::exp(-alpha);
  const double x = static_cast<double>(x0);
  const double head = std::exp(-alpha * x);
  return {head / one_minus_q, head * (x / one_minus_q + q / (one_minus_q * one_minus_q))};
}

}  // namespace infalpha::series
