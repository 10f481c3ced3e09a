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
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "infalpha/errors.h"

namespace infalpha {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

FiniteMeasure random_measure(std::mt19937_64& gen, Symbol max_symbol,
                             double keep_probability = 0.8) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::map<Symbol, double> w;
  for (Symbol x = 1; x <= max_symbol; ++x) {
    if (u(gen) < keep_probability) w[x] = 0.05 + u(gen);
  }
  if (w.empty()) w[1 + gen() % max_symbol] = 1.0;
  return FiniteMeasure::normalized(w);
}

// sup over all events A within {1..k} of |mu(A) - nu(A)|.
double exhaustive_sup(const FiniteMeasure& mu, const FiniteMeasure& nu, Symbol k) {
  double best = 0.0;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    double d = 0.0;
    for (Symbol x = 1; x <= k; ++x) {
      if (mask & (1u << (x - 1))) d += mu.mass(x) - nu.mass(x);
    }
    best = std::max(best, std::fabs(d));
  }
  return best;
}

// sup over the sigma-field generated by the singletons of gamma and the
// complement of gamma, enumerated atom by atom.
double exhaustive_restricted(const FiniteMeasure& mu, const FiniteMeasure& nu,
                             const SymbolSet& gamma, Symbol k) {
  std::vector<double> atoms;
  double rest = 0.0;
  for (Symbol x = 1; x <= k; ++x) {
    const double d = mu.mass(x) - nu.mass(x);
    if (std::find(gamma.begin(), gamma.end(), x) != gamma.end()) {
      atoms.push_back(d);
    } else {
      rest += d;
    }
  }
  atoms.push_back(rest);
  double best = 0.0;
  for (unsigned mask = 0; mask < (1u << atoms.size()); ++mask) {
    double d = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (mask & (1u << i)) d += atoms[i];
    }
    best = std::max(best, std::fabs(d));
  }
  return best;
}

TEST(EmpiricalMeasureTest, Counts) {
  const auto a = empirical_measure(std::vector<Symbol>{3, 3, 7, 7});
  const auto expected = FiniteMeasure::from_masses({{3, 0.5}, {7, 0.5}});
  EXPECT_TRUE(std::equal(a.atoms().begin(), a.atoms().end(), expected.atoms().begin(),
                         expected.atoms().end()));
  const auto b = empirical_measure(std::vector<Symbol>{1, 1, 1, 2});
  EXPECT_DOUBLE_EQ(b.mass(1), 0.75);
  EXPECT_DOUBLE_EQ(b.mass(2), 0.25);
  EXPECT_EQ(b.n_source(), 4u);
  EXPECT_THROW(empirical_measure(std::vector<Symbol>{}), DomainError);
}

TEST(EmpiricalMeasureTest, UniformSampleConcentrates) {
  const auto mu = empirical_measure(sample(make_uniform_pmf(4), 10000, 8));
  for (Symbol x = 1; x <= 4; ++x) EXPECT_NEAR(mu.mass(x), 0.25, 0.05);
}

TEST(FiniteMeasureTest, Validation) {
  EXPECT_THROW(FiniteMeasure::from_masses({{1, 0.5}}), InvalidDistribution);
  EXPECT_THROW(FiniteMeasure::from_masses({{1, 0.0}, {2, 1.0}}), InvalidDistribution);
  EXPECT_THROW(FiniteMeasure::from_masses({}), InvalidDistribution);
  EXPECT_NO_THROW(FiniteMeasure::from_masses({{1, 0.5}, {2, 0.5 + 1e-13}}));
}

TEST(FiniteMeasureTest, JsonRoundTrip) {
  const auto mu = FiniteMeasure::from_masses({{2, 0.125}, {10, 0.875}});
  EXPECT_EQ(measure_from_json(measure_to_json(mu)), mu);
  EXPECT_THROW(measure_from_json(nlohmann::json{{"a", 1.0}}), ParseError);
}

TEST(TotalVariationTest, Examples) {
  const auto mu = FiniteMeasure::from_masses({{1, 0.3}, {2, 0.7}});
  EXPECT_EQ(total_variation(mu, mu), 0.0);
  const auto point = FiniteMeasure::from_masses({{1, 1.0}});
  EXPECT_DOUBLE_EQ(total_variation(point, make_uniform_pmf(2)), 0.5);
}

TEST(TotalVariationTest, EqualsExhaustiveSup) {
  std::mt19937_64 gen(11);
  for (int i = 0; i < 200; ++i) {
    const auto mu = random_measure(gen, 5);
    const auto nu = random_measure(gen, 5);
    EXPECT_NEAR(total_variation(mu, nu), exhaustive_sup(mu, nu, 5), 1e-12);
  }
}

TEST(TotalVariationTest, AgainstParametricLaw) {
  const Pmf geo = make_exp_tail_pmf(std::numbers::ln2);
  const auto mu = FiniteMeasure::from_masses({{1, 0.5}, {2, 0.5}});
  // |0.5-0.5| + |0.5-0.25| + sum_{x>=3} 2^-x = 0.25 + 0.25.
  EXPECT_NEAR(total_variation(mu, geo), 0.25, 1e-15);
  EXPECT_NEAR(total_variation(geo, mu), 0.25, 1e-15);

  const Pmf p2 = make_power_tail_pmf(2.0);
  const Pmf p3 = make_power_tail_pmf(3.0);
  double oracle = 0.0;
  for (Symbol x = 1; x <= 2000000; ++x) oracle += std::fabs(p2.mass(x) - p3.mass(x));
  oracle += p2.tail_mass(2000001) - p3.tail_mass(2000001);
  EXPECT_NEAR(total_variation(p2, p3), 0.5 * oracle, 1e-10);
  EXPECT_EQ(total_variation(p2, p2), 0.0);
}

TEST(KlDivergenceTest, Examples) {
  const auto mu = FiniteMeasure::from_masses({{1, 0.5}, {2, 0.5}});
  const auto nu = FiniteMeasure::from_masses({{1, 0.25}, {2, 0.75}});
  EXPECT_EQ(kl_divergence(mu, mu), 0.0);
  EXPECT_NEAR(kl_divergence(mu, nu), 0.5 + 0.5 * std::log2(2.0 / 3.0), 1e-15);
  EXPECT_NEAR(kl_divergence(mu, nu), 0.207518749639422, 1e-12);
  const auto a = FiniteMeasure::from_masses({{1, 1.0}});
  const auto b = FiniteMeasure::from_masses({{2, 1.0}});
  EXPECT_EQ(kl_divergence(a, b), kInf);
}

TEST(KlDivergenceTest, InfiniteIffNotDominated) {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 300; ++i) {
    const auto mu = random_measure(gen, 6, 0.6);
    const auto nu = random_measure(gen, 6, 0.6);
    bool dominated = true;
    for (const Atom& a : mu.atoms()) dominated = dominated && nu.mass(a.symbol) > 0;
    EXPECT_EQ(std::isinf(kl_divergence(mu, nu)), !dominated);
  }
}

TEST(KlDivergenceTest, ParametricClosedForms) {
  const Pmf p2 = make_power_tail_pmf(2.0);
  const Pmf p3 = make_power_tail_pmf(3.0);
  const Pmf g1 = make_exp_tail_pmf(0.5);
  const Pmf g2 = make_exp_tail_pmf(1.5);
  // log2 f_b evaluated analytically so deep terms do not underflow.
  auto log_mass = [](const Pmf& b, Symbol x) {
    const double xd = static_cast<double>(x);
    if (b.kind() == PmfKind::kPowerTail) {
      return -b.exponent() * std::log2(xd) - std::log2(b.normalizer());
    }
    return std::log2(std::expm1(b.decay_rate())) - b.decay_rate() * xd * kLog2E;
  };
  auto truncated = [&](const Pmf& a, const Pmf& b, Symbol depth) {
    double d = 0.0;
    for (Symbol x = 1; x <= depth; ++x) {
      const double f = a.mass(x);
      if (f > 0) d += f * (std::log2(f) - log_mass(b, x));
    }
    return d;
  };
  EXPECT_NEAR(kl_divergence(g1, g2), truncated(g1, g2, 3000), 1e-12);
  EXPECT_NEAR(kl_divergence(p3, p2), truncated(p3, p2, 1000000), 1e-9);
  EXPECT_NEAR(kl_divergence(g1, p2), truncated(g1, p2, 3000), 1e-12);
  EXPECT_NEAR(kl_divergence(p3, g1), truncated(p3, g1, 3000000), 1e-5);
  // E[X] diverges under p = 2, so the geometric reference is not enough.
  EXPECT_EQ(kl_divergence(p2, g1), kInf);
  EXPECT_EQ(kl_divergence(p2, make_uniform_pmf(4)), kInf);
  EXPECT_EQ(kl_divergence(make_power_tail_pmf(2.0, 1), make_power_tail_pmf(2.0, 3)),
            kInf);
}

TEST(EntropyTest, Examples) {
  EXPECT_EQ(entropy(FiniteMeasure::from_masses({{4, 1.0}})), 0.0);
  for (std::size_t k : {2, 4, 8}) {
    EXPECT_DOUBLE_EQ(entropy(FiniteMeasure::from_pmf(make_uniform_pmf(k))),
                     std::log2(static_cast<double>(k)));
  }
  EXPECT_NEAR(entropy(FiniteMeasure::from_masses({{1, 0.75}, {2, 0.25}})),
              0.811278124459133, 1e-12);
}

TEST(ConditionalTest, Examples) {
  const auto mu = FiniteMeasure::from_masses({{1, 0.2}, {3, 0.8}});
  EXPECT_EQ(conditional(mu, {1, 3}), mu);
  const Pmf u4 = make_uniform_pmf(4);
  EXPECT_EQ(conditional(u4, {1, 2}), FiniteMeasure::from_masses({{1, 0.5}, {2, 0.5}}));
  const auto c = conditional(make_power_tail_pmf(2.0), {1, 2, 3});
  const double z = 1.0 + 0.25 + 1.0 / 9.0;
  EXPECT_NEAR(c.mass(1), 1.0 / z, 1e-15);
  EXPECT_NEAR(c.mass(2), 0.25 / z, 1e-15);
  EXPECT_NEAR(c.mass(3), 1.0 / 9.0 / z, 1e-15);
  EXPECT_THROW(conditional(mu, {2}), DegenerateConditioning);
  EXPECT_THROW(conditional(mu, {}), DegenerateConditioning);
}

TEST(RestrictedVariationTest, Saturation) {
  std::mt19937_64 gen(3);
  const auto mu = random_measure(gen, 5);
  const auto nu = random_measure(gen, 5);
  EXPECT_NEAR(restricted_variation(mu, nu, {1, 2, 3, 4, 5}), total_variation(mu, nu),
              1e-15);
  EXPECT_NEAR(restricted_variation(mu, nu, {}), 0.0, 1e-15);
}

TEST(RestrictedVariationTest, EqualsExhaustiveSigmaFieldSup) {
  std::mt19937_64 gen(21);
  for (int i = 0; i < 200; ++i) {
    const auto mu = random_measure(gen, 5);
    const auto nu = random_measure(gen, 5);
    SymbolSet gamma;
    for (Symbol x = 1; x <= 5; ++x) {
      if (gen() % 2) gamma.push_back(x);
    }
    EXPECT_NEAR(restricted_variation(mu, nu, gamma),
                exhaustive_restricted(mu, nu, gamma, 5), 1e-12);
  }
  const auto mu = random_measure(gen, 5);
  const auto nu = random_measure(gen, 5);
  EXPECT_NEAR(restricted_variation(mu, nu, {1, 2}),
              exhaustive_restricted(mu, nu, {1, 2}, 5), 1e-12);
}

TEST(RestrictedVariationTest, MonotoneAndBounded) {
  std::mt19937_64 gen(8);
  for (int i = 0; i < 100; ++i) {
    const auto mu = random_measure(gen, 8);
    const auto nu = random_measure(gen, 8);
    SymbolSet gamma;
    double prev = 0.0;
    for (Symbol x = 1; x <= 8; ++x) {
      gamma.push_back(x);
      const double v = restricted_variation(mu, nu, gamma);
      EXPECT_GE(v, prev - 1e-15);
      EXPECT_LE(v, total_variation(mu, nu) + 1e-15);
      prev = v;
    }
  }
}

TEST(RestrictedVariationTest, AgainstParametricLaw) {
  const Pmf geo = make_exp_tail_pmf(std::numbers::ln2);
  const auto mu = FiniteMeasure::from_masses({{1, 0.25}, {2, 0.75}});
  // Cells {1}, {2}, rest: |0.25-0.5| + |0.75-0.25| + |0-0.25|.
  EXPECT_NEAR(restricted_variation(geo, mu, {1, 2}), 0.5, 1e-15);
  // Cells {1}, rest: |0.25-0.5| + |0.75-0.5|.
  EXPECT_NEAR(restricted_variation(geo, mu, {1}), 0.25, 1e-15);
}

TEST(SupportStatsTest, Examples) {
  const auto u = support_stats(make_uniform_pmf(8));
  EXPECT_EQ(u.m, 0.125);
  EXPECT_EQ(u.M, 3.0);
  EXPECT_EQ(u.size, 8u);
  const auto s = support_stats(FiniteMeasure::from_masses({{1, 0.75}, {2, 0.25}}));
  EXPECT_EQ(s.m, 0.25);
  EXPECT_EQ(s.M, 2.0);
  EXPECT_THROW(support_stats(make_power_tail_pmf(2.0)), DomainError);
}

TEST(InequalityTest, Pinsker) {
  std::mt19937_64 gen(99);
  for (int i = 0; i < 200; ++i) {
    const auto nu = random_measure(gen, 6, 1.0);
    const auto mu = random_measure(gen, 6, 0.7);
    const double v = total_variation(mu, nu);
    EXPECT_LE(v * v, kl_divergence(mu, nu) / (2.0 * kLog2E) + 1e-15);
  }
}

TEST(InequalityTest, PluginPerturbationBounds) {
  std::mt19937_64 gen(1234);
  for (int i = 0; i < 200; ++i) {
    const auto mu = random_measure(gen, 6, 0.9);
    const auto mu_n = conditional(random_measure(gen, 6, 1.0), mu.support());
    const auto st = support_stats(mu);
    const double v = total_variation(mu_n, mu);
    EXPECT_LE(kl_divergence(mu_n, mu), kLog2E / st.m * v + 1e-15);
    EXPECT_LE(std::fabs(entropy(mu) - entropy(mu_n)), (st.M + kLog2E / st.m) * v + 1e-15);
  }
}

}  // namespace
}  // namespace infalpha
