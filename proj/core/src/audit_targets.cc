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

#include "dpsc/audit_targets.h"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "dpsc/aggregator.h"
#include "dpsc/dp_map.h"
#include "dpsc/noise_source.h"
#include "dpsc/padding.h"
#include "dpsc/positive_laplace.h"
#include "dpsc/privacy_params.h"
#include "dpsc/sparse_vector.h"
#include "dpsc/status.h"

namespace dpsc {
namespace {

constexpr int kStreamLength = 8;

// Seeded source, optionally under-noised.
class FixtureNoise {
 public:
  FixtureNoise(uint64_t seed, bool sabotage)
      : base_(seed), scaled_(base_, kSabotageNoiseFactor), sabotage_(sabotage) {}
  NoiseSource& get() { return sabotage_ ? static_cast<NoiseSource&>(scaled_) : base_; }

 private:
  SeededNoiseSource base_;
  ScaledNoiseSource scaled_;
  bool sabotage_;
};

std::vector<double> HaltOutcomes() {
  std::vector<double> outcomes;
  for (int k = 1; k <= kStreamLength; ++k) outcomes.push_back(k);
  return outcomes;
}

double HaltOutcome(const absl::StatusOr<SvtOutput>& out) {
  if (!out.ok()) return -1;
  std::optional<size_t> halt = HaltIndex(*out);
  return halt.has_value() ? static_cast<double>(*halt + 1) : kStreamLength + 1;
}

std::vector<double> RaisedPrefix(int j, double base) {
  std::vector<double> values(kStreamLength, base);
  for (int i = 0; i < j; ++i) values[i] += 1;
  return values;
}

template <typename Run>
absl::StatusOr<AuditReport> AuditStreams(std::string name,
                                         std::vector<double> d,
                                         std::vector<double> d_prime, Run run,
                                         double delta,
                                         const TargetAuditOptions& options,
                                         uint64_t stream) {
  const bool sabotage = options.sabotage;
  Sampler sample_d = [d, run, sabotage](uint64_t seed) {
    FixtureNoise noise(seed, sabotage);
    return HaltOutcome(run(QueryStream{d, true}, noise.get()));
  };
  Sampler sample_d_prime = [d_prime, run, sabotage](uint64_t seed) {
    FixtureNoise noise(seed, sabotage);
    return HaltOutcome(run(QueryStream{d_prime, true}, noise.get()));
  };
  std::vector<double> outcomes = HaltOutcomes();
  DPSC_ASSIGN_OR_RETURN(
      AuditReport report,
      DpAudit(sample_d, sample_d_prime, ExactOutcomeEvents(outcomes),
              options.epsilon, delta, options.trials,
              DeriveSeed(options.seed, stream), {options.threads}));
  report.target = std::move(name);
  return report;
}

absl::StatusOr<AuditReport> AuditUds(const TargetAuditOptions& options) {
  const double epsilon = options.epsilon;
  auto run = [epsilon](QueryStream q, NoiseSource& noise) {
    return UdsAboveThreshold(q, 0.0, epsilon, noise);
  };
  std::vector<AuditReport> parts;
  for (int j = 1; j <= kStreamLength; ++j) {
    DPSC_ASSIGN_OR_RETURN(
        AuditReport part,
        AuditStreams(absl::StrCat("j=", j), RaisedPrefix(0, 0),
                     RaisedPrefix(j, 0), run, 0.0, options, j));
    parts.push_back(std::move(part));
  }
  AuditReport merged = MergeReports("uds", parts);
  merged.seed = options.seed;
  return merged;
}

absl::StatusOr<AuditReport> AuditStrictUds(const TargetAuditOptions& options) {
  DPSC_ASSIGN_OR_RETURN(PrivacyBudget budget,
                        PrivacyBudget::Create(options.epsilon, options.delta));
  const double threshold =
      2.0 * StrictThresholdShift(budget, 2.0 / budget.epsilon());
  auto run = [budget, threshold](QueryStream q, NoiseSource& noise) {
    return StrictUdsAboveThreshold(q, threshold, budget, noise);
  };
  std::vector<AuditReport> parts;
  for (int j = 1; j <= kStreamLength; ++j) {
    DPSC_ASSIGN_OR_RETURN(
        AuditReport part,
        AuditStreams(absl::StrCat("j=", j), RaisedPrefix(0, 0),
                     RaisedPrefix(j, 0), run, options.delta, options, j));
    parts.push_back(std::move(part));
  }
  std::vector<double> ramp(kStreamLength);
  for (int i = 0; i < kStreamLength; ++i) {
    ramp[i] = threshold - kStreamLength + 1 + i;
  }
  std::vector<double> ramp_up = ramp;
  for (double& v : ramp_up) v += 1;
  DPSC_ASSIGN_OR_RETURN(AuditReport part,
                        AuditStreams("ramp", ramp, ramp_up, run, options.delta,
                                     options, kStreamLength + 1));
  parts.push_back(std::move(part));
  AuditReport merged = MergeReports("strict-uds", parts);
  merged.seed = options.seed;
  return merged;
}

absl::StatusOr<AuditReport> AuditPositiveLaplace(
    const TargetAuditOptions& options) {
  DPSC_ASSIGN_OR_RETURN(
      PrivacyParams params,
      PrivacyParams::Create(options.epsilon, options.delta, 1.0));
  const bool sabotage = options.sabotage;
  auto sampler = [params, sabotage](double v) -> Sampler {
    return [params, sabotage, v](uint64_t seed) {
      FixtureNoise noise(seed, sabotage);
      return PositiveLaplace(v, params, kDefaultTauMode, noise.get());
    };
  };
  DPSC_ASSIGN_OR_RETURN(
      AuditReport report,
      DpAudit(sampler(100), sampler(101), ThresholdFamily{}, options.epsilon,
              options.delta, options.trials, options.seed, {options.threads}));
  report.target = "positive-laplace";
  return report;
}

absl::StatusOr<AuditReport> AuditDpMap(const TargetAuditOptions& options) {
  constexpr int64_t kCapacity = 64;
  constexpr int64_t kTrailing = 64;
  DPSC_ASSIGN_OR_RETURN(PrivacyBudget budget,
                        PrivacyBudget::Create(options.epsilon, options.delta));
  auto stream = [](bool novel) {
    std::vector<int64_t> keys;
    for (int64_t i = 0; i + 1 < kCapacity; ++i) keys.push_back(i);
    keys.push_back(novel ? kCapacity : 0);
    for (int64_t i = 0; i < kTrailing; ++i) keys.push_back(1000 + i);
    return keys;
  };
  const bool sabotage = options.sabotage;
  auto sampler = [budget, sabotage](std::vector<int64_t> keys) -> Sampler {
    return [budget, sabotage, keys](uint64_t seed) {
      FixtureNoise noise(seed, sabotage);
      DpMapOptions map_options;
      map_options.initial_capacity = kCapacity;
      auto map = DpMap<int64_t, int64_t>::CreatePrivate(map_options, budget,
                                                        &noise.get());
      if (!map.ok()) return -1.0;
      StreamHistogram<int64_t> hist = HistogramFromStream(
          std::span<const int64_t>(keys), *map, /*use_private_write=*/true);
      for (size_t i = kCapacity - 1; i < hist.resize_bits.size(); ++i) {
        if (hist.resize_bits[i]) {
          return static_cast<double>(i - (kCapacity - 1));
        }
      }
      return static_cast<double>(kTrailing + 1);
    };
  };
  std::vector<double> outcomes;
  for (int64_t k = 0; k <= kTrailing + 1; ++k) {
    outcomes.push_back(static_cast<double>(k));
  }
  DPSC_ASSIGN_OR_RETURN(
      AuditReport report,
      DpAudit(sampler(stream(true)), sampler(stream(false)),
              ExactOutcomeEvents(outcomes), options.epsilon, options.delta,
              options.trials, options.seed, {options.threads}));
  report.target = "dp-map";
  return report;
}

absl::StatusOr<AuditReport> AuditPadding(const TargetAuditOptions& options) {
  DPSC_ASSIGN_OR_RETURN(PrivacyBudget budget,
                        PrivacyBudget::Create(options.epsilon, options.delta));
  DPSC_ASSIGN_OR_RETURN(
      ColumnSchema schema,
      ColumnSchema::Create({ColumnSpec::GroupString("key", 8),
                            ColumnSpec::SumInt64("count")}));
  HistogramTable empty(schema);
  HistogramTable one(schema);
  DPSC_RETURN_IF_ERROR(one.Insert({std::string("abcdefgh")}, {int64_t{1}}));
  const bool sabotage = options.sabotage;
  auto sampler = [budget, sabotage](HistogramTable table) -> Sampler {
    return [budget, sabotage, table](uint64_t seed) {
      FixtureNoise noise(seed, sabotage);
      auto padded = PadSerialize(table, budget, 1, kDefaultTauMode, noise.get());
      return padded.ok() ? static_cast<double>(padded->size()) : -1.0;
    };
  };
  DPSC_ASSIGN_OR_RETURN(
      AuditReport report,
      DpAudit(sampler(empty), sampler(one), ThresholdFamily{}, options.epsilon,
              options.delta, options.trials, options.seed, {options.threads}));
  report.target = "padding";
  return report;
}

absl::StatusOr<AuditReport> AuditRelease(const TargetAuditOptions& options) {
  PipelineConfig config;
  DPSC_ASSIGN_OR_RETURN(config.schema,
                        ColumnSchema::Create({ColumnSpec::GroupString("g", 1),
                                              ColumnSpec::SumDouble("v")}));
  config.value_bounds = {{-1.0, 1.0}};
  config.epsilon_release = options.epsilon;
  config.delta = options.delta;
  DPSC_RETURN_IF_ERROR(config.Validate());
  HistogramTable low(config.schema);
  HistogramTable high(config.schema);
  DPSC_RETURN_IF_ERROR(low.Insert({std::string("a")}, {-1.0}));
  DPSC_RETURN_IF_ERROR(high.Insert({std::string("a")}, {1.0}));
  const bool sabotage = options.sabotage;
  auto sampler = [config, sabotage](HistogramTable merged) -> Sampler {
    return [config, sabotage, merged](uint64_t seed) {
      FixtureNoise noise(seed, sabotage);
      HistogramTable released = Release(merged, config, noise.get());
      return std::get<double>(released.rows().begin()->second[0]);
    };
  };
  // Release is pure epsilon-DP.
  DPSC_ASSIGN_OR_RETURN(
      AuditReport report,
      DpAudit(sampler(low), sampler(high), ThresholdFamily{}, options.epsilon,
              0.0, options.trials, options.seed, {options.threads}));
  report.target = "release";
  return report;
}

}  // namespace

const char* AuditTargetName(AuditTarget target) {
  switch (target) {
    case AuditTarget::kPositiveLaplace:
      return "positive-laplace";
    case AuditTarget::kUds:
      return "uds";
    case AuditTarget::kStrictUds:
      return "strict-uds";
    case AuditTarget::kDpMap:
      return "dp-map";
    case AuditTarget::kPadding:
      return "padding";
    case AuditTarget::kRelease:
      return "release";
  }
  return "unknown";
}

absl::StatusOr<AuditTarget> ParseAuditTarget(std::string_view name) {
  for (AuditTarget t :
       {AuditTarget::kPositiveLaplace, AuditTarget::kUds,
        AuditTarget::kStrictUds, AuditTarget::kDpMap, AuditTarget::kPadding,
        AuditTarget::kRelease}) {
    if (name == AuditTargetName(t)) return t;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown audit target '", std::string(name),
      "'; expected positive-laplace, uds, strict-uds, dp-map, padding or "
      "release"));
}

absl::StatusOr<AuditReport> RunTargetAudit(AuditTarget target,
                                           const TargetAuditOptions& options) {
  absl::StatusOr<AuditReport> report;
  switch (target) {
    case AuditTarget::kPositiveLaplace:
      report = AuditPositiveLaplace(options);
      break;
    case AuditTarget::kUds:
      report = AuditUds(options);
      break;
    case AuditTarget::kStrictUds:
      report = AuditStrictUds(options);
      break;
    case AuditTarget::kDpMap:
      report = AuditDpMap(options);
      break;
    case AuditTarget::kPadding:
      report = AuditPadding(options);
      break;
    case AuditTarget::kRelease:
      report = AuditRelease(options);
      break;
  }
  if (report.ok() && options.sabotage) {
    report->target = absl::StrCat(report->target, "+sabotage");
  }
  return report;
}

}  // namespace dpsc
