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
// Plug-in entropy estimators: the empirical plug-in, the Barron mixture,
// the histogram estimator over a reference partition, and the data-driven
// estimator that conditions on the symbols whose empirical mass reaches a
// threshold. Also the decaying schedules that drive them.

#ifndef INFALPHA_ESTIMATORS_H_
#define INFALPHA_ESTIMATORS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "infalpha/alphabet_models.h"
#include "infalpha/empirical.h"

namespace infalpha {

enum class ScheduleRole { kMixture, kBandwidth, kThreshold };  // a_n, h_n, eps_n

// value(n) = c * n^-t.
class Schedule {
 public:
  static Schedule constant(double value) { return Schedule(value, 0.0); }
  static Schedule power_decay(double c, double t) { return Schedule(c, t); }

  double operator()(std::size_t n) const;
  double coefficient() const { return c_; }
  double exponent() const { return t_; }
  bool is_constant() const { return t_ == 0.0; }

 private:
  Schedule(double c, double t) : c_(c), t_(t) {}
  double c_;
  double t_;
};

// Validates c > 0, t >= 0 and value(n) in (0, 1) for every n >= 2; the
// mixture weight may also reach 1 (the pure reference measure). Throws
// DomainError otherwise.
Schedule make_schedule(ScheduleRole role, double coefficient, double exponent);

// tau* = 1 / (2 + 1/p) and the matching error exponent (1 - 1/p)/(2 + 1/p).
double power_tail_threshold_exponent(double p);
double power_tail_rate_exponent(double p);

struct BgmScheduleCheck {
  bool vanishing;         // a_n -> 0 and h_n -> 0
  bool rate_condition;    // 1/(a_n h_n) = o(n^tau) with tau in (0, 1/2)
  bool corollary_condition;  // limsup 1/(n a_n h_n) <= 1
  bool passes() const { return vanishing && rate_condition; }
};
BgmScheduleCheck check_bgm_schedule(const Schedule& a, const Schedule& h,
                                    double tau);

// One partition cell: the symbol range [first, last], or [first, inf) when
// `last` is empty.
struct Cell {
  Symbol first;
  std::optional<Symbol> last;
  double reference_mass;

  bool contains(Symbol x) const { return x >= first && (!last || x <= *last); }
};

// Contiguous cells covering {1, 2, ...}; the final cell is the tail segment.
class Partition {
 public:
  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  std::size_t cell_index(Symbol x) const;
  const std::string& reference_id() const { return reference_id_; }

  friend Partition build_bgm_partition(const Pmf& v, double h);

 private:
  std::vector<Cell> cells_;
  std::string reference_id_;
};

// Index-ordered greedy: a cell closes as soon as its reference mass reaches
// h, provided at least h remains for the cells after it; otherwise the
// remainder becomes the tail cell. Every cell has mass >= h, so the count is
// at most 1/h. Throws DomainError unless 0 < h < 1.
Partition build_bgm_partition(const Pmf& v, double h);

// f(x) = f_v(x) * weight[i] / v(A_i) for x in cell A_i.
struct CellMixture {
  Partition partition;
  std::vector<double> cell_weights;

  double mass(Symbol x, const Pmf& v) const;
};

enum class EstimatorKind { kPlugin, kBarron, kBgm, kDataDriven };
std::string_view estimator_name(EstimatorKind kind);
// Accepts "plugin", "barron", "bgm" and "data_driven". Throws ConfigError.
EstimatorKind parse_estimator_kind(std::string_view name);

struct ScheduleValues {
  std::optional<double> a;
  std::optional<double> h;
  std::optional<double> eps;
};

struct EstimatorResult {
  EstimatorKind kind = EstimatorKind::kPlugin;
  double entropy_bits = 0.0;
  std::variant<std::monostate, FiniteMeasure, CellMixture> measure;
  SymbolSet support_used;
  ScheduleValues schedule;
  bool degenerate = false;
};

// Each estimator also accepts the empirical measure precomputed by the caller.
EstimatorResult plugin_entropy(const Sample& sample);
EstimatorResult plugin_entropy(const FiniteMeasure& empirical);

// (1 - a) mu_n + a v with v of finite support and a in (0, 1]. Throws
// AbsoluteContinuityViolation when a sample symbol is outside the support
// of v.
EstimatorResult barron_mixture(const Sample& sample, const Pmf& v, double a);
EstimatorResult barron_mixture(const FiniteMeasure& empirical, const Pmf& v,
                               double a);

// Histogram mixture over build_bgm_partition(v, h); entropy by closed-form
// cell decomposition with the tail cell evaluated analytically.
EstimatorResult bgm_estimate(const Sample& sample, const Pmf& v, double a,
                             double h);
EstimatorResult bgm_estimate(const FiniteMeasure& empirical, const Pmf& v,
                             double a, double h);
EstimatorResult bgm_estimate(const FiniteMeasure& empirical, const Pmf& v,
                             double a, const Partition& partition);

// H(mu_n(. | Gamma)) with Gamma = {x : mu_n(x) >= eps}. An empty Gamma sets
// the degenerate flag and returns 0 bits.
EstimatorResult data_driven_estimate(const Sample& sample, double eps);
EstimatorResult data_driven_estimate(const FiniteMeasure& empirical, double eps);

// Gamma_eps of a finite measure, ties included.
SymbolSet threshold_set(const FiniteMeasure& mu, double eps);

}  // namespace infalpha

#endif  // INFALPHA_ESTIMATORS_H_
