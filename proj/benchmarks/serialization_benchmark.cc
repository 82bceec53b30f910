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
#include <string>

#include "benchmark/benchmark.h"
#include "dpsc/histogram_table.h"
#include "dpsc/noise_source.h"
#include "dpsc/overhead.h"
#include "dpsc/padding.h"
#include "dpsc/privacy_params.h"
#include "dpsc/serialization.h"

namespace dpsc {
namespace {

void BM_SerializeHistogram(benchmark::State& state) {
  const HistogramTable table = OverheadTable(state.range(0));
  int64_t bytes = 0;
  for (auto _ : state) {
    std::string out = SerializeHistogram(table);
    bytes += static_cast<int64_t>(out.size());
    benchmark::DoNotOptimize(out);
  }
  state.SetBytesProcessed(bytes);
}
BENCHMARK(BM_SerializeHistogram)->RangeMultiplier(4)->Range(16, 4096);

void BM_DeserializeHistogram(benchmark::State& state) {
  const HistogramTable table = OverheadTable(state.range(0));
  const std::string bytes = SerializeHistogram(table);
  for (auto _ : state) {
    auto parsed = DeserializeHistogram(table.schema(), bytes);
    benchmark::DoNotOptimize(parsed);
  }
  state.SetBytesProcessed(state.iterations() *
                          static_cast<int64_t>(bytes.size()));
}
BENCHMARK(BM_DeserializeHistogram)->RangeMultiplier(4)->Range(16, 4096);

void BM_PadSerialize(benchmark::State& state) {
  const HistogramTable table = OverheadTable(state.range(0));
  const PrivacyBudget budget = *PrivacyBudget::Create(1.0, 1e-4);
  SeededNoiseSource noise(1);
  for (auto _ : state) {
    auto padded = PadSerialize(table, budget, 1, TauMode::kBespoke, noise);
    benchmark::DoNotOptimize(padded);
  }
}
BENCHMARK(BM_PadSerialize)->RangeMultiplier(4)->Range(16, 4096);

}  // namespace
}  // namespace dpsc

BENCHMARK_MAIN();
