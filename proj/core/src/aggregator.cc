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

#include "dpsc/aggregator.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "absl/strings/str_cat.h"
#include "dpsc/serialization.h"
#include "dpsc/status.h"

namespace dpsc {
namespace {

absl::Status CheckPositive(const char* name, double value) {
  if (!std::isfinite(value) || value <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat(name, " must be finite and positive, got ", value));
  }
  return absl::OkStatus();
}

double AsDouble(const SumValue& value) {
  return std::visit([](auto v) { return static_cast<double>(v); }, value);
}

}  // namespace

void PipelineConfig::SetTotalEpsilon(double total) {
  epsilon_pad = 0.25 * total;
  epsilon_resize = 0.25 * total;
  epsilon_release = 0.5 * total;
}

absl::Status PipelineConfig::Validate() const {
  if (schema.columns().empty()) {
    return absl::InvalidArgumentError("pipeline config has no schema");
  }
  if (max_groups < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("max_groups must be positive, got ", max_groups));
  }
  if (value_bounds.size() != schema.num_sum_columns()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "expected ", schema.num_sum_columns(), " value bounds, got ",
        value_bounds.size()));
  }
  for (const ValueBounds& b : value_bounds) {
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || b.lo > b.hi) {
      return absl::InvalidArgumentError(
          absl::StrCat("invalid value bounds [", b.lo, ", ", b.hi, "]"));
    }
  }
  DPSC_RETURN_IF_ERROR(CheckPositive("epsilon_pad", epsilon_pad));
  DPSC_RETURN_IF_ERROR(CheckPositive("epsilon_resize", epsilon_resize));
  DPSC_RETURN_IF_ERROR(CheckPositive("epsilon_release", epsilon_release));
  if (!(delta > 0 && delta < 0.5)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must be in (0, 0.5), got ", delta));
  }
  if (num_leaves < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("num_leaves must be at least 1, got ", num_leaves));
  }
  if (initial_capacity < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "initial_capacity must be positive, got ", initial_capacity));
  }
  return absl::OkStatus();
}

BudgetReport ComputeBudget(const PipelineConfig& config) {
  BudgetReport report;
  const double leaves = config.num_leaves;
  if (config.pad_messages) {
    report.epsilon += leaves * config.epsilon_pad;
    report.delta += leaves * config.delta;
  }
  if (config.private_resize) {
    report.epsilon += leaves * config.epsilon_resize;
    report.delta += leaves * config.delta;
  }
  report.epsilon += config.epsilon_release;
  return report;
}

double PerGroupValueSensitivity(const PipelineConfig& config) {
  double total = 0;
  for (const ValueBounds& b : config.value_bounds) {
    total += 2.0 * std::max(std::abs(b.lo), std::abs(b.hi));
  }
  return total;
}

std::unique_ptr<NoiseSource> MakeNoiseSource(const PipelineConfig& config,
                                             uint64_t stream) {
  if (config.noiseless) return std::make_unique<ZeroNoiseSource>();
  return std::make_unique<SeededNoiseSource>(DeriveSeed(config.seed, stream));
}

absl::Status ValidateContribution(const PipelineConfig& config,
                                  const Contribution& contribution) {
  if (static_cast<int64_t>(contribution.rows.size()) > config.max_groups) {
    return ContributionBoundViolationError(absl::StrCat(
        "client '", contribution.client_id, "' contributes to ",
        contribution.rows.size(), " groups, max_groups is ",
        config.max_groups));
  }
  std::set<GroupKey> seen;
  for (const ContributionRow& row : contribution.rows) {
    DPSC_RETURN_IF_ERROR(config.schema.ValidateKey(row.key));
    DPSC_RETURN_IF_ERROR(config.schema.ValidateValues(row.values));
    if (!seen.insert(row.key).second) {
      return ContributionBoundViolationError(absl::StrCat(
          "client '", contribution.client_id, "' repeats a group"));
    }
    for (size_t i = 0; i < row.values.size(); ++i) {
      const double v = AsDouble(row.values[i]);
      const ValueBounds& b = config.value_bounds[i];
      if (!(v >= b.lo && v <= b.hi)) {
        return ValueOutOfBoundsError(absl::StrCat(
            "client '", contribution.client_id, "' value ", v,
            " for column '", config.schema.sum_column(i).name,
            "' is outside [", b.lo, ", ", b.hi, "]"));
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<LeafAggregator> LeafAggregator::Create(
    const PipelineConfig& config, int leaf_id,
    std::unique_ptr<NoiseSource> noise) {
  DPSC_RETURN_IF_ERROR(config.Validate());
  if (noise == nullptr) {
    return absl::InvalidArgumentError("leaf needs a noise source");
  }
  DpMapOptions options;
  options.initial_capacity = config.initial_capacity;
  options.contribution_multiplier = config.max_groups;
  absl::StatusOr<Map> map;
  if (config.private_resize) {
    DPSC_ASSIGN_OR_RETURN(
        PrivacyBudget budget,
        PrivacyBudget::Create(config.epsilon_resize, config.delta));
    map = Map::CreatePrivate(options, budget, noise.get());
  } else {
    map = Map::Create(options);
  }
  if (!map.ok()) return map.status();
  return LeafAggregator(config, leaf_id, std::move(noise), *std::move(map));
}

absl::Status LeafAggregator::Accumulate(const Contribution& contribution) {
  DPSC_RETURN_IF_ERROR(ValidateContribution(config_, contribution));
  for (const ContributionRow& row : contribution.rows) {
    SumValues sum = row.values;
    if (map_.Present(row.key)) {
      sum = *map_.Read(row.key);
      AddValues(row.values, &sum);
    }
    if (config_.private_resize) {
      map_.PrivateWrite(row.key, std::move(sum));
    } else {
      map_.Write(row.key, std::move(sum));
    }
  }
  return absl::OkStatus();
}

HistogramTable LeafAggregator::PartialHistogram() const {
  HistogramTable table(config_.schema);
  for (auto& [key, values] : map_.Dump()) {
    // Keys and values were validated on the way in.
    (void)table.Insert(key, values);
  }
  return table;
}

absl::StatusOr<PaddedPayload> LeafAggregator::Serialize() {
  const HistogramTable table = PartialHistogram();
  if (!config_.pad_messages) {
    return PaddedPayload::Unpadded(SerializeHistogram(table));
  }
  DPSC_ASSIGN_OR_RETURN(PrivacyBudget budget,
                        PrivacyBudget::Create(config_.epsilon_pad, config_.delta));
  return PadSerialize(table, budget, config_.max_groups, config_.tau_mode,
                      *noise_);
}

absl::StatusOr<HistogramTable> RootMerge(
    const ColumnSchema& schema, std::span<const PaddedPayload> payloads) {
  std::map<GroupKey, std::vector<SumValues>> addends;
  for (const PaddedPayload& payload : payloads) {
    DPSC_ASSIGN_OR_RETURN(HistogramTable table,
                          DeserializeHistogram(schema, payload.payload()));
    for (const auto& [key, values] : table.rows()) {
      addends[key].push_back(values);
    }
  }
  HistogramTable merged(schema);
  for (auto& [key, parts] : addends) {
    SumValues total = schema.ZeroValues();
    for (size_t c = 0; c < total.size(); ++c) {
      if (std::holds_alternative<int64_t>(total[c])) {
        int64_t sum = 0;
        for (const SumValues& part : parts) sum += std::get<int64_t>(part[c]);
        total[c] = sum;
      } else {
        std::vector<double> column;
        column.reserve(parts.size());
        for (const SumValues& part : parts) {
          column.push_back(std::get<double>(part[c]));
        }
        std::sort(column.begin(), column.end());
        double sum = 0;
        for (double v : column) sum += v;
        total[c] = sum;
      }
    }
    DPSC_RETURN_IF_ERROR(merged.Insert(key, std::move(total)));
  }
  return merged;
}

absl::StatusOr<HistogramTable> RootMerge(const ColumnSchema& schema,
                                         std::span<const std::string> messages) {
  std::vector<PaddedPayload> payloads;
  payloads.reserve(messages.size());
  for (const std::string& message : messages) {
    DPSC_ASSIGN_OR_RETURN(PaddedPayload payload, PaddedPayload::Parse(message));
    payloads.push_back(std::move(payload));
  }
  return RootMerge(schema, std::span<const PaddedPayload>(payloads));
}

HistogramTable Release(const HistogramTable& merged,
                       const PipelineConfig& config, NoiseSource& noise) {
  const double scale = static_cast<double>(config.max_groups) *
                       PerGroupValueSensitivity(config) /
                       config.epsilon_release;
  HistogramTable released(merged.schema());
  for (const auto& [key, values] : merged.rows()) {
    SumValues noisy = values;
    for (SumValue& cell : noisy) {
      const double eta = scale > 0 ? noise.Laplace(scale) : 0.0;
      if (auto* i = std::get_if<int64_t>(&cell)) {
        *i += static_cast<int64_t>(std::llround(eta));
      } else {
        std::get<double>(cell) += eta;
      }
    }
    (void)released.Insert(key, std::move(noisy));
  }
  return released;
}

absl::StatusOr<PipelineResult> RunPipeline(
    std::span<const Contribution> contributions, const PipelineConfig& config) {
  DPSC_RETURN_IF_ERROR(config.Validate());

  std::vector<LeafAggregator> leaves;
  leaves.reserve(config.num_leaves);
  for (int i = 0; i < config.num_leaves; ++i) {
    DPSC_ASSIGN_OR_RETURN(
        LeafAggregator leaf,
        LeafAggregator::Create(config, i,
                               MakeNoiseSource(config, static_cast<uint64_t>(i))));
    leaves.push_back(std::move(leaf));
  }

  std::unordered_map<std::string, int> leaf_of_client;
  for (const Contribution& c : contributions) {
    auto [it, inserted] = leaf_of_client.try_emplace(
        c.client_id,
        static_cast<int>(leaf_of_client.size() % config.num_leaves));
    absl::Status status = leaves[it->second].Accumulate(c);
    if (!status.ok()) {
      return absl::Status(status.code(),
                          absl::StrCat("leaf ", it->second, ": ",
                                       status.message()));
    }
  }

  PipelineResult result{HistogramTable(config.schema),
                        HistogramTable(config.schema), ObservationTrace(),
                        ComputeBudget(config)};
  std::vector<PaddedPayload> payloads;
  payloads.reserve(leaves.size());
  for (LeafAggregator& leaf : leaves) {
    for (const ResizeEvent& event : leaf.resize_log()) {
      DPSC_RETURN_IF_ERROR(result.trace.AppendResize(leaf.leaf_id(), event));
    }
    DPSC_ASSIGN_OR_RETURN(PaddedPayload payload, leaf.Serialize());
    DPSC_RETURN_IF_ERROR(result.trace.AppendMessageLength(
        leaf.leaf_id(), static_cast<int64_t>(payload.size())));
    payloads.push_back(std::move(payload));
  }

  DPSC_ASSIGN_OR_RETURN(
      result.merged,
      RootMerge(config.schema, std::span<const PaddedPayload>(payloads)));
  std::unique_ptr<NoiseSource> release_noise =
      MakeNoiseSource(config, kReleaseNoiseStream);
  result.released = Release(result.merged, config, *release_noise);
  return result;
}

}  // namespace dpsc
