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

#ifndef DPSC_ATTACKS_H_
#define DPSC_ATTACKS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpsc/aggregator.h"
#include "dpsc/audit.h"

namespace dpsc {

// Two neighboring datasets under the replacement relation: equal length,
// equal client ids, and only contribution `target_index` differs. `config`
// carries the schema and contribution bounds both datasets satisfy; the
// attacks override its mitigation flags and stage budgets.
struct NeighborPair {
  PipelineConfig config;
  std::vector<Contribution> d;
  std::vector<Contribution> d_prime;
  size_t target_index = 0;
};

absl::Status ValidatePair(const NeighborPair& pair);

// Fifty filler clients cycling (Reddit|Instagram|X|TikTok|Youtube, android),
// then a target client contributing (Reddit, android) in D and (Reddit, iOS)
// in D'. D' holds one more group, so its message is longer.
NeighborPair SybilLengthPair();

// `capacity - 1` filler clients with distinct groups fill a map of initial
// capacity `capacity` to one below its resize point. The target contributes a
// novel group in D and repeats the first filler group in D'. `trailing` novel
// clients follow.
NeighborPair SybilAllocationPair(int64_t capacity = 64, int64_t trailing = 32);

// `pair` with D' replaced by D.
NeighborPair IdenticalPair(NeighborPair pair);

// tanh(epsilon / 2) + delta = (e^eps - 1) / (e^eps + 1) + delta, the largest
// |TPR - FPR| any test can reach against an (epsilon, delta)-DP observable.
double DistinguisherBound(double epsilon, double delta);

struct AttackOptions {
  bool mitigated = false;
  // Budget of the attacked stage (padding, or private resizing); applied to
  // both stages.
  double epsilon = 1.0;
  double delta = 1e-4;
  int64_t trials = 1000;
  uint64_t seed = 0;
  TauMode tau_mode = kDefaultTauMode;
};

struct AttackResult {
  std::string observable;
  int64_t trials = 0;
  double threshold = 0;
  // True if the rule says D' for observations above the threshold.
  bool above_means_d_prime = true;
  double tpr = 0;
  double fpr = 0;
  double advantage = 0;
  // 99% normal-approximation interval for TPR - FPR on the eval half.
  Interval ci{0, 0};
  // DistinguisherBound at the attack budget; 1 when unmitigated.
  double bound = 1;

  std::string ToText() const;
};

// Trains a best single-threshold rule on the first half of each sample and
// reports |TPR - FPR| of that rule on the second half. Positives are D'.
AttackResult ThresholdDistinguisher(std::span<const double> observed_d,
                                    std::span<const double> observed_d_prime);

// Per trial t, runs the pipeline on D with seed DeriveSeed(seed, 2t) and on D'
// with DeriveSeed(seed, 2t + 1), observing the total message bytes.
absl::StatusOr<AttackResult> MessageLengthAttack(const NeighborPair& pair,
                                                 const AttackOptions& options);

// As above, observing how many writes after the target write the first
// resize at or after it happens on the target's leaf (a sentinel past the end
// of the stream if none).
absl::StatusOr<AttackResult> AllocationAttack(const NeighborPair& pair,
                                              const AttackOptions& options);

// The allocation observable of one pipeline trace.
double ResizeOffsetObservation(const NeighborPair& pair,
                               const ObservationTrace& trace);

}  // namespace dpsc

#endif  // DPSC_ATTACKS_H_
