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

#include "benchmark/benchmark.h"
#include "dpsc/dp_map.h"
#include "dpsc/noise_source.h"
#include "dpsc/privacy_params.h"

namespace dpsc {
namespace {

using IntMap = DpMap<int64_t, int64_t>;

void BM_Write(benchmark::State& state) {
  const int64_t n = state.range(0);
  for (auto _ : state) {
    auto map = IntMap::Create();
    for (int64_t k = 0; k < n; ++k) map->Write(k, k);
    benchmark::DoNotOptimize(map->GetCapacity());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Write)->RangeMultiplier(8)->Range(64, 32768);

void BM_PrivateWrite(benchmark::State& state) {
  const int64_t n = state.range(0);
  const PrivacyBudget budget = *PrivacyBudget::Create(1.0, 1e-4);
  SeededNoiseSource noise(2);
  for (auto _ : state) {
    auto map = IntMap::CreatePrivate({}, budget, &noise);
    for (int64_t k = 0; k < n; ++k) map->PrivateWrite(k, k);
    benchmark::DoNotOptimize(map->GetCapacity());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_PrivateWrite)->RangeMultiplier(8)->Range(64, 32768);

}  // namespace
}  // namespace dpsc

BENCHMARK_MAIN();
