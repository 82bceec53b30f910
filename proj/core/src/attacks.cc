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

#include "dpsc/attacks.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dpsc/noise_source.h"
#include "dpsc/status.h"

namespace dpsc {
namespace {

bool SameRows(const Contribution& a, const Contribution& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i].key != b.rows[i].key || a.rows[i].values != b.rows[i].values) {
      return false;
    }
  }
  return true;
}

ColumnSchema AppSchema() {
  return *ColumnSchema::Create({ColumnSpec::GroupString("app", 15),
                                ColumnSpec::GroupString("os", 8),
                                ColumnSpec::SumDouble("clicks"),
                                ColumnSpec::SumDouble("minutes")});
}

ContributionRow AppRow(std::string app, std::string os) {
  return ContributionRow{{std::move(app), std::move(os)}, {1.0, 1.0}};
}

// Leaf and in-leaf write index of the target's first row.
struct TargetPosition {
  int leaf;
  int64_t write_index;
  int64_t sentinel;
};

TargetPosition LocateTarget(const NeighborPair& pair) {
  const int leaves = std::max(1, pair.config.num_leaves);
  TargetPosition pos{static_cast<int>(pair.target_index % leaves), 0, 0};
  int64_t rows_d = 0;
  int64_t rows_d_prime = 0;
  for (size_t i = 0; i < pair.d.size(); ++i) {
    if (static_cast<int>(i % leaves) != pos.leaf) continue;
    if (i < pair.target_index) {
      pos.write_index += static_cast<int64_t>(pair.d[i].rows.size());
    }
    rows_d += static_cast<int64_t>(pair.d[i].rows.size());
    rows_d_prime += static_cast<int64_t>(pair.d_prime[i].rows.size());
  }
  pos.sentinel = std::max(rows_d, rows_d_prime) - pos.write_index;
  return pos;
}

PipelineConfig AttackConfig(const NeighborPair& pair,
                            const AttackOptions& options) {
  PipelineConfig config = pair.config;
  config.pad_messages = options.mitigated;
  config.private_resize = options.mitigated;
  config.epsilon_pad = options.epsilon;
  config.epsilon_resize = options.epsilon;
  config.delta = options.delta;
  config.tau_mode = options.tau_mode;
  config.noiseless = false;
  return config;
}

template <typename Observe>
absl::StatusOr<AttackResult> RunAttack(const NeighborPair& pair,
                                       const AttackOptions& options,
                                       std::string observable,
                                       Observe observe) {
  DPSC_RETURN_IF_ERROR(ValidatePair(pair));
  if (options.trials < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("attack needs at least 2 trials, got ", options.trials));
  }
  if (options.mitigated) {
    DPSC_RETURN_IF_ERROR(
        PrivacyBudget::Create(options.epsilon, options.delta).status());
  }
  PipelineConfig config = AttackConfig(pair, options);
  std::vector<double> observed_d;
  std::vector<double> observed_d_prime;
  observed_d.reserve(options.trials);
  observed_d_prime.reserve(options.trials);
  for (int64_t t = 0; t < options.trials; ++t) {
    const uint64_t u = static_cast<uint64_t>(t);
    config.seed = DeriveSeed(options.seed, 2 * u);
    DPSC_ASSIGN_OR_RETURN(PipelineResult run_d, RunPipeline(pair.d, config));
    config.seed = DeriveSeed(options.seed, 2 * u + 1);
    DPSC_ASSIGN_OR_RETURN(PipelineResult run_d_prime,
                          RunPipeline(pair.d_prime, config));
    observed_d.push_back(observe(run_d.trace));
    observed_d_prime.push_back(observe(run_d_prime.trace));
  }
  AttackResult result = ThresholdDistinguisher(observed_d, observed_d_prime);
  result.observable = std::move(observable);
  result.trials = options.trials;
  result.bound = options.mitigated
                     ? DistinguisherBound(options.epsilon, options.delta)
                     : 1.0;
  return result;
}

}  // namespace

absl::Status ValidatePair(const NeighborPair& pair) {
  DPSC_RETURN_IF_ERROR(pair.config.Validate());
  if (pair.d.size() != pair.d_prime.size()) {
    return absl::InvalidArgumentError(
        "neighboring datasets must have the same number of contributions");
  }
  if (pair.target_index >= pair.d.size()) {
    return absl::InvalidArgumentError("target_index is out of range");
  }
  std::set<std::string> ids;
  for (size_t i = 0; i < pair.d.size(); ++i) {
    if (pair.d[i].client_id != pair.d_prime[i].client_id) {
      return absl::InvalidArgumentError(absl::StrCat(
          "contribution ", i, " has different client ids in D and D'"));
    }
    if (!ids.insert(pair.d[i].client_id).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("client '", pair.d[i].client_id, "' appears twice"));
    }
    if (i != pair.target_index && !SameRows(pair.d[i], pair.d_prime[i])) {
      return absl::InvalidArgumentError(absl::StrCat(
          "contribution ", i, " differs but is not the target"));
    }
    DPSC_RETURN_IF_ERROR(ValidateContribution(pair.config, pair.d[i]));
    DPSC_RETURN_IF_ERROR(ValidateContribution(pair.config, pair.d_prime[i]));
  }
  return absl::OkStatus();
}

NeighborPair SybilLengthPair() {
  static constexpr const char* kApps[] = {"Reddit", "Instagram", "X", "TikTok",
                                          "Youtube"};
  NeighborPair pair;
  pair.config.schema = AppSchema();
  pair.config.max_groups = 1;
  pair.config.value_bounds = {{0, 1}, {0, 1}};
  pair.config.num_leaves = 1;
  for (int i = 0; i < 50; ++i) {
    Contribution c{absl::StrCat("sybil-", i), {AppRow(kApps[i % 5], "android")}};
    pair.d.push_back(c);
    pair.d_prime.push_back(std::move(c));
  }
  pair.target_index = pair.d.size();
  pair.d.push_back({"target", {AppRow("Reddit", "android")}});
  pair.d_prime.push_back({"target", {AppRow("Reddit", "iOS")}});
  return pair;
}

NeighborPair SybilAllocationPair(int64_t capacity, int64_t trailing) {
  NeighborPair pair;
  pair.config.schema = AppSchema();
  pair.config.max_groups = 1;
  pair.config.value_bounds = {{0, 1}, {0, 1}};
  pair.config.num_leaves = 1;
  pair.config.initial_capacity = capacity;
  auto add_both = [&pair](Contribution c) {
    pair.d.push_back(c);
    pair.d_prime.push_back(std::move(c));
  };
  for (int64_t i = 0; i + 1 < capacity; ++i) {
    add_both({absl::StrCat("sybil-", i),
              {AppRow(absl::StrCat("filler-", i), "android")}});
  }
  pair.target_index = pair.d.size();
  pair.d.push_back({"target", {AppRow("novel", "android")}});
  pair.d_prime.push_back({"target", {AppRow("filler-0", "android")}});
  for (int64_t i = 0; i < trailing; ++i) {
    add_both({absl::StrCat("tail-", i),
              {AppRow(absl::StrCat("tail-", i), "android")}});
  }
  return pair;
}

NeighborPair IdenticalPair(NeighborPair pair) {
  pair.d_prime = pair.d;
  return pair;
}

double DistinguisherBound(double epsilon, double delta) {
  return std::tanh(epsilon / 2) + delta;
}

AttackResult ThresholdDistinguisher(std::span<const double> observed_d,
                                    std::span<const double> observed_d_prime) {
  const size_t train_d = observed_d.size() / 2;
  const size_t train_dp = observed_d_prime.size() / 2;

  // Candidate cut points are the training values; rule "x > c means D'" and
  // its mirror. A cut below every value is included as -inf.
  std::vector<std::pair<double, int>> labeled;
  for (size_t i = 0; i < train_d; ++i) labeled.push_back({observed_d[i], 0});
  for (size_t i = 0; i < train_dp; ++i) {
    labeled.push_back({observed_d_prime[i], 1});
  }
  std::sort(labeled.begin(), labeled.end());

  double best_gap = 0;
  double best_cut = -INFINITY;
  bool best_above = true;
  // Start with the cut below everything: all predicted D'.
  double above_d = static_cast<double>(train_d);
  double above_dp = static_cast<double>(train_dp);
  auto consider = [&](double cut) {
    const double tpr = train_dp ? above_dp / train_dp : 0;
    const double fpr = train_d ? above_d / train_d : 0;
    if (std::abs(tpr - fpr) > best_gap) {
      best_gap = std::abs(tpr - fpr);
      best_cut = cut;
      best_above = tpr >= fpr;
    }
  };
  consider(-INFINITY);
  for (size_t i = 0; i < labeled.size();) {
    const double value = labeled[i].first;
    while (i < labeled.size() && labeled[i].first == value) {
      (labeled[i].second == 0 ? above_d : above_dp) -= 1;
      ++i;
    }
    consider(value);
  }

  AttackResult result;
  result.threshold = best_cut;
  result.above_means_d_prime = best_above;
  auto says_d_prime = [&](double x) { return (x > best_cut) == best_above; };
  const size_t eval_d = observed_d.size() - train_d;
  const size_t eval_dp = observed_d_prime.size() - train_dp;
  double hits = 0;
  for (size_t i = train_dp; i < observed_d_prime.size(); ++i) {
    hits += says_d_prime(observed_d_prime[i]);
  }
  double false_alarms = 0;
  for (size_t i = train_d; i < observed_d.size(); ++i) {
    false_alarms += says_d_prime(observed_d[i]);
  }
  result.tpr = eval_dp ? hits / eval_dp : 0;
  result.fpr = eval_d ? false_alarms / eval_d : 0;
  const double diff = result.tpr - result.fpr;
  result.advantage = std::abs(diff);
  const double se = std::sqrt(
      (eval_dp ? result.tpr * (1 - result.tpr) / eval_dp : 0) +
      (eval_d ? result.fpr * (1 - result.fpr) / eval_d : 0));
  constexpr double kZ99 = 2.5758293035489004;
  result.ci = {std::max(-1.0, diff - kZ99 * se), std::min(1.0, diff + kZ99 * se)};
  return result;
}

std::string AttackResult::ToText() const {
  return absl::StrFormat(
      "attack observable=%s trials=%d threshold=%.6g rule=%s tpr=%.6f "
      "fpr=%.6f advantage=%.6f ci99=[%.6f,%.6f] bound=%.6f\n",
      observable, trials, threshold,
      above_means_d_prime ? "above->D'" : "above->D", tpr, fpr, advantage,
      ci.lo, ci.hi, bound);
}

double ResizeOffsetObservation(const NeighborPair& pair,
                               const ObservationTrace& trace) {
  const TargetPosition pos = LocateTarget(pair);
  for (const ResizeObservation& r : trace.Resizes(pos.leaf)) {
    if (r.write_index >= pos.write_index) {
      return static_cast<double>(r.write_index - pos.write_index);
    }
  }
  return static_cast<double>(pos.sentinel);
}

absl::StatusOr<AttackResult> MessageLengthAttack(const NeighborPair& pair,
                                                 const AttackOptions& options) {
  return RunAttack(pair, options, "message_bytes",
                   [](const ObservationTrace& trace) {
                     return static_cast<double>(trace.TotalMessageBytes());
                   });
}

absl::StatusOr<AttackResult> AllocationAttack(const NeighborPair& pair,
                                              const AttackOptions& options) {
  return RunAttack(pair, options, "resize_offset",
                   [&pair](const ObservationTrace& trace) {
                     return ResizeOffsetObservation(pair, trace);
                   });
}

}  // namespace dpsc
