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
#include <cmath>

#include <benchmark/benchmark.h>

#include "infalpha/alphabet_models.h"
#include "infalpha/empirical.h"
#include "infalpha/estimators.h"

namespace infalpha {
namespace {

FiniteMeasure power_empirical(std::size_t n) {
  return empirical_measure(sample(make_power_tail_pmf(2.0), n, 7));
}

void BM_PluginEntropy(benchmark::State& state) {
  const FiniteMeasure mn = power_empirical(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(plugin_entropy(mn));
  }
}
BENCHMARK(BM_PluginEntropy)->Range(1 << 10, 1 << 20);

void BM_DataDriven(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FiniteMeasure mn = power_empirical(n);
  const double eps = std::pow(static_cast<double>(n), -0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(data_driven_estimate(mn, eps));
  }
}
BENCHMARK(BM_DataDriven)->Range(1 << 10, 1 << 20);

void BM_BuildPartitionGeometric(benchmark::State& state) {
  const Pmf v = make_exp_tail_pmf(0.05);
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_bgm_partition(v, h));
  }
}
BENCHMARK(BM_BuildPartitionGeometric)->Range(8, 1 << 12);

void BM_BuildPartitionPowerTail(benchmark::State& state) {
  const Pmf v = make_power_tail_pmf(1.5);
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_bgm_partition(v, h));
  }
}
BENCHMARK(BM_BuildPartitionPowerTail)->Range(8, 1 << 10);

void BM_BgmEstimate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Pmf v = make_exp_tail_pmf(0.3);
  const FiniteMeasure mn = empirical_measure(sample(make_exp_tail_pmf(0.5), n, 3));
  const double nd = static_cast<double>(n);
  const Partition partition = build_bgm_partition(v, std::pow(nd, -0.2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bgm_estimate(mn, v, std::pow(nd, -0.1), partition));
  }
}
BENCHMARK(BM_BgmEstimate)->Range(1 << 10, 1 << 18);

}  // namespace
}  // namespace infalpha

BENCHMARK_MAIN();
