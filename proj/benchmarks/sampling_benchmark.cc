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

namespace infalpha {
namespace {

void BM_SamplePowerTail(benchmark::State& state) {
  const Pmf pmf = make_power_tail_pmf(2.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample(pmf, n, seed++));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SamplePowerTail)->Range(1 << 10, 1 << 20);

void BM_SampleGeometric(benchmark::State& state) {
  const Pmf pmf = make_exp_tail_pmf(std::log(2.0));
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample(pmf, n, seed++));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleGeometric)->Range(1 << 10, 1 << 20);

void BM_EmpiricalMeasure(benchmark::State& state) {
  const Sample s = sample(make_power_tail_pmf(1.5), static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(empirical_measure(s));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EmpiricalMeasure)->Range(1 << 10, 1 << 20);

void BM_PowerTailSums(benchmark::State& state) {
  Symbol x0 = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tail_sums(x0, TailFamily::power(1.5)));
    x0 = x0 % 100000 + 2;
  }
}
BENCHMARK(BM_PowerTailSums);

}  // namespace
}  // namespace infalpha
