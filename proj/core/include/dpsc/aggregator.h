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

#ifndef DPSC_AGGREGATOR_H_
#define DPSC_AGGREGATOR_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "absl/hash/hash.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpsc/dp_map.h"
#include "dpsc/histogram_table.h"
#include "dpsc/noise_source.h"
#include "dpsc/observation_trace.h"
#include "dpsc/padding.h"
#include "dpsc/positive_laplace.h"

namespace dpsc {

struct ContributionRow {
  GroupKey key;
  SumValues values;
};

// Everything one client uploads. Valid contributions have distinct group keys
// and at most max_groups rows, with every value inside its column's bounds.
struct Contribution {
  std::string client_id;
  std::vector<ContributionRow> rows;
};

struct ValueBounds {
  double lo;
  double hi;
};

// Configuration of the leaf/root GROUP BY SUM pipeline.
//
// The three epsilons are separate stage budgets: padding of each leaf message,
// private resizing of each leaf map, and the final release. `delta` is used by
// both the padding and the resize stage.
struct PipelineConfig {
  ColumnSchema schema;
  int64_t max_groups = 1;
  // One entry per Sum column, in schema order.
  std::vector<ValueBounds> value_bounds;
  double epsilon_pad = 0.25;
  double epsilon_resize = 0.25;
  double epsilon_release = 0.5;
  double delta = 1e-4;
  int num_leaves = 1;
  TauMode tau_mode = kDefaultTauMode;
  // Mitigations. With both off the pipeline is the vulnerable baseline.
  bool pad_messages = true;
  bool private_resize = true;
  int64_t initial_capacity = 4;
  uint64_t seed = 0;
  // Replace every noise source by an all-zeros one.
  bool noiseless = false;

  // Splits a total epsilon 25/25/50 across padding, resize and release.
  void SetTotalEpsilon(double total);

  absl::Status Validate() const;
};

// Simple composition of everything a pipeline run spends.
struct BudgetReport {
  double epsilon = 0;
  double delta = 0;
};

BudgetReport ComputeBudget(const PipelineConfig& config);

// Per-cell L1 sensitivity of one replaced contribution row, summed over Sum
// columns: 2 * max(|lo|, |hi|) each, since the row may move between groups.
double PerGroupValueSensitivity(const PipelineConfig& config);

// Noise stream ids. Each leaf owns DeriveSeed(seed, leaf_id); the release uses
// a fixed id independent of the number of leaves.
inline constexpr uint64_t kReleaseNoiseStream = uint64_t{1} << 32;
std::unique_ptr<NoiseSource> MakeNoiseSource(const PipelineConfig& config,
                                             uint64_t stream);

// Validates a contribution against the config without side effects.
absl::Status ValidateContribution(const PipelineConfig& config,
                                  const Contribution& contribution);

// One leaf worker: accumulates its partition into a private-resizing map and
// emits a (padded) serialized partial histogram. Owns its noise source.
class LeafAggregator {
 public:
  static absl::StatusOr<LeafAggregator> Create(
      const PipelineConfig& config, int leaf_id,
      std::unique_ptr<NoiseSource> noise);

  // Rejects (does not clamp) contributions that break the bounds. The state is
  // unchanged on error.
  absl::Status Accumulate(const Contribution& contribution);

  // The leaf's message to the root.
  absl::StatusOr<PaddedPayload> Serialize();

  HistogramTable PartialHistogram() const;
  const std::vector<ResizeEvent>& resize_log() const { return map_.resize_log(); }
  int leaf_id() const { return leaf_id_; }
  int64_t num_groups() const { return map_.GetLoad(); }

 private:
  using Map = DpMap<GroupKey, SumValues, absl::Hash<GroupKey>>;

  LeafAggregator(PipelineConfig config, int leaf_id,
                 std::unique_ptr<NoiseSource> noise, Map map)
      : config_(std::move(config)),
        leaf_id_(leaf_id),
        noise_(std::move(noise)),
        map_(std::move(map)) {}

  PipelineConfig config_;
  int leaf_id_;
  std::unique_ptr<NoiseSource> noise_;
  Map map_;
};

// Decodes every leaf message and adds per-group sums. Floating-point addends
// of a group are summed in sorted order, so the result does not depend on the
// order of the payloads.
absl::StatusOr<HistogramTable> RootMerge(const ColumnSchema& schema,
                                         std::span<const PaddedPayload> payloads);
// Same, for messages as received on the wire.
absl::StatusOr<HistogramTable> RootMerge(const ColumnSchema& schema,
                                         std::span<const std::string> messages);

// Adds Laplace(max_groups * PerGroupValueSensitivity / epsilon_release) to
// every Sum cell. Group keys pass through unchanged. SumInt64 cells are
// rounded to the nearest integer after noise.
HistogramTable Release(const HistogramTable& merged,
                       const PipelineConfig& config, NoiseSource& noise);

struct PipelineResult {
  HistogramTable merged;
  HistogramTable released;
  ObservationTrace trace;
  BudgetReport budget;
};

// Scatter-gather run: client i (by first appearance) goes to leaf
// i % num_leaves, each leaf accumulates and sends one message, the root merges
// and releases. All of one client's data stays on one leaf, so neighboring
// inputs differ on exactly one leaf. The trace lists, per leaf, its resize
// events followed by its message length.
absl::StatusOr<PipelineResult> RunPipeline(
    std::span<const Contribution> contributions, const PipelineConfig& config);

}  // namespace dpsc

#endif  // DPSC_AGGREGATOR_H_
