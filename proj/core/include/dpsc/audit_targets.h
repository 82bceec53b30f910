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

#ifndef DPSC_AUDIT_TARGETS_H_
#define DPSC_AUDIT_TARGETS_H_

#include <cstdint>
#include <string_view>

#include "absl/status/statusor.h"
#include "dpsc/audit.h"

namespace dpsc {

// Mechanisms with a built-in worst-case neighbor fixture.
enum class AuditTarget {
  kPositiveLaplace,
  kUds,
  kStrictUds,
  kDpMap,
  kPadding,
  kRelease,
};

const char* AuditTargetName(AuditTarget target);
absl::StatusOr<AuditTarget> ParseAuditTarget(std::string_view name);

// Sabotaged fixtures halve every noise scale of the mechanism under test.
inline constexpr double kSabotageNoiseFactor = 0.5;

struct TargetAuditOptions {
  double epsilon = 1.0;
  // Ignored by the pure-DP target kUds, which is audited at delta = 0.
  double delta = 1e-4;
  int64_t trials = 100000;
  uint64_t seed = 0;
  bool sabotage = false;
  int threads = 1;
};

// Fixtures:
//   positive-laplace  v = 100 vs 101 with sensitivity 1; threshold events.
//   uds               T = 0, eight zero queries vs the first j raised by 1,
//                     one sub-audit per j = 1..8; events "halt at k", k <= 8.
//   strict-uds        the uds fixtures with T = 2q, so the hard stop is idle,
//                     plus a ramp reaching T in D and one step earlier in D'.
//   dp-map            initial capacity 64, 63 filler keys, then a novel key in
//                     D and a repeated key in D', then 64 novel keys; the
//                     outcome is the offset of the first resize at or after
//                     the target write.
//   padding           empty table vs one row with a max-length key.
//   release           one cell at the lower vs upper value bound.
absl::StatusOr<AuditReport> RunTargetAudit(AuditTarget target,
                                           const TargetAuditOptions& options);

}  // namespace dpsc

#endif  // DPSC_AUDIT_TARGETS_H_
