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
#ifndef INFALPHA_SRC_SERIES_H_
#define INFALPHA_SRC_SERIES_H_

#include <cmath>
#include <cstdint>

namespace infalpha::series {

// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// Sums of the power series starting at x0 >= 1:
//   s = sum_{x >= x0} x^-p,   r = sum_{x >= x0} x^-p ln x   (natural log).
struct PowerSums {
  double s;
  double r;
};

// Explicit summation up to an adaptively chosen cut, Euler-Maclaurin beyond
// it. Absolute error of both sums is below `tol`. Requires p > 1.
PowerSums power_sums(double p, std::uint64_t x0, double tol = 1e-14);

// Upper bound on the Euler-Maclaurin remainder when the closed-form tail
// starts at `cut` (first omitted Bernoulli term, both series).
double power_tail_remainder_bound(double p, double cut);

// Closed forms for sum_{x >= x0} e^{-alpha x} and sum_{x >= x0} x e^{-alpha x}.
struct GeometricSums {
  double s;
  double r;
};
GeometricSums geometric_sums(double alpha, std::uint64_t x0);

}  // namespace infalpha::series

#endif  // INFALPHA_SRC_SERIES_H_
