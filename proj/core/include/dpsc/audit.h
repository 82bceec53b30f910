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

#ifndef DPSC_AUDIT_H_
#define DPSC_AUDIT_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace dpsc {

// Draws one outcome of a mechanism run on a fixed dataset. Each call gets its
// own seed and must not touch shared mutable state, so trials can run on
// several threads.
using Sampler = std::function<double(uint64_t seed)>;

struct AuditEvent {
  std::string name;
  std::function<bool(double)> contains;
};

// {X == v} for each v.
std::vector<AuditEvent> ExactOutcomeEvents(std::span<const double> outcomes);

// {X <= c} and {X > c} for up to `cuts` distinct quantile-spaced cut points of
// `pilot`.
std::vector<AuditEvent> ThresholdEvents(std::span<const double> pilot,
                                        int cuts = 64);

// Threshold events whose cut points come from a pilot run of both samplers,
// drawn from a seed stream disjoint from the audit trials.
struct ThresholdFamily {
  int cuts = 64;
  int64_t pilot_trials = 4000;
};

using EventFamily = std::variant<std::vector<AuditEvent>, ThresholdFamily>;

struct AuditOptions {
  int threads = 1;
};

inline constexpr double kAuditConfidence = 0.99;
inline constexpr char kAuditCiMethod[] = "clopper-pearson-99";

struct Interval {
  double lo;
  double hi;
};

// Two-sided Clopper-Pearson interval for `successes` out of `trials` at
// kAuditConfidence.
Interval ClopperPearson(int64_t successes, int64_t trials);

struct EventRecord {
  std::string name;
  int64_t count_d = 0;
  int64_t count_d_prime = 0;
  double p_d = 0;
  double p_d_prime = 0;
  Interval ci_d{0, 0};
  Interval ci_d_prime{0, 0};
  // Worst direction. Point estimate ln((p1 - delta) / p2) and its conservative
  // counterpart ln((L1 - delta) / U2), floored at 0. Infinite when the
  // denominator is 0.
  double epsilon_hat = 0;
  double epsilon_lower = 0;
  // L1 > e^eps * U2 + delta in either direction.
  bool violation = false;
};

struct AuditReport {
  std::string target;
  double epsilon = 0;
  double delta = 0;
  int64_t trials = 0;
  uint64_t seed = 0;
  std::string ci_method = kAuditCiMethod;
  std::vector<EventRecord> events;

  bool passed() const;
  double worst_epsilon_hat() const;
  double worst_epsilon_lower() const;
  // Name of the event with the largest epsilon_lower, or empty.
  std::string worst_event() const;

  // One header line, one "event" line per event, one "result" line.
  std::string ToText() const;
};

// Appends the events of `parts` into one report, prefixing each event name
// with its part's target.
AuditReport MergeReports(std::string target, std::span<const AuditReport> parts);

// Smallest trial count for which a perfect n-vs-0 split of some event would
// be certified as a violation at (epsilon, delta).
int64_t MinimumTrials(double epsilon, double delta);

// Monte-Carlo check of Pr[M(D) in S] <= e^eps Pr[M(D') in S] + delta and the
// reverse for every event S. Trial t evaluates sampler_d at
// DeriveSeed(seed, 2t) and sampler_d_prime at DeriveSeed(seed, 2t + 1); the
// result does not depend on the thread count.
//
// InsufficientTrials (with the suggested count) if `trials` is below
// MinimumTrials, so that no event could ever be found in violation.
absl::StatusOr<AuditReport> DpAudit(const Sampler& sampler_d,
                                    const Sampler& sampler_d_prime,
                                    const EventFamily& family, double epsilon,
                                    double delta, int64_t trials, uint64_t seed,
                                    const AuditOptions& options = {});

}  // namespace dpsc

#endif  // DPSC_AUDIT_H_
