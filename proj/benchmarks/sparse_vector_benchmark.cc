/*
 * Copyright 2026 Google LLC
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdint>
#include <vector>

#include "benchmark/benchmark.h"
#include "dpsc/noise_source.h"
#include "dpsc/privacy_params.h"
#include "dpsc/sparse_vector.h"

namespace dpsc {
namespace {

constexpr double kUnreachable = 1e12;

void BM_Textbook(benchmark::State& state) {
  const std::vector<double> zeros(static_cast<size_t>(state.range(0)), 0.0);
  SeededNoiseSource noise(3);
  for (auto _ : state) {
    auto out = AboveThresholdTextbook({zeros, false}, kUnreachable, 1.0, noise);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Textbook)->Range(64, 65536);

void BM_Uds(benchmark::State& state) {
  const std::vector<double> zeros(static_cast<size_t>(state.range(0)), 0.0);
  SeededNoiseSource noise(4);
  for (auto _ : state) {
    auto out = UdsAboveThreshold({zeros, true}, kUnreachable, 1.0, noise);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Uds)->Range(64, 65536);

void BM_StrictUds(benchmark::State& state) {
  const std::vector<double> zeros(static_cast<size_t>(state.range(0)), 0.0);
  const PrivacyBudget budget = *PrivacyBudget::Create(1.0, 1e-4);
  SeededNoiseSource noise(5);
  for (auto _ : state) {
    auto out = StrictUdsAboveThreshold({zeros, true}, kUnreachable, budget, noise);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StrictUds)->Range(64, 65536);

}  // namespace
}  // namespace dpsc

BENCHMARK_MAIN();
