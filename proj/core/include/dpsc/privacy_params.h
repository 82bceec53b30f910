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

#ifndef DPSC_PRIVACY_PARAMS_H_
#define DPSC_PRIVACY_PARAMS_H_

#include "absl/status/statusor.h"

namespace dpsc {

// (epsilon, delta) with 0 < epsilon < inf and 0 < delta < 1/2.
//
// delta >= 1/2 is rejected rather than clamped: the tail-quantile formula
// used for tau and for the strict AboveThreshold shift is only defined for
// quantile levels below 1/2.
class PrivacyBudget {
 public:
  static absl::StatusOr<PrivacyBudget> Create(double epsilon, double delta);

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }

 private:
  PrivacyBudget(double epsilon, double delta)
      : epsilon_(epsilon), delta_(delta) {}

  double epsilon_;
  double delta_;
};

// A budget plus the sensitivity (Delta) of the protected quantity. The unit
// of the sensitivity is whatever the mechanism protects: bytes for padding,
// distinct keys for map loads.
class PrivacyParams {
 public:
  static absl::StatusOr<PrivacyParams> Create(double epsilon, double delta,
                                              double sensitivity);
  static absl::StatusOr<PrivacyParams> Create(const PrivacyBudget& budget,
                                              double sensitivity);

  double epsilon() const { return budget_.epsilon(); }
  double delta() const { return budget_.delta(); }
  double sensitivity() const { return sensitivity_; }
  const PrivacyBudget& budget() const { return budget_; }

  // Scale of the Laplace noise calibrated to this sensitivity: Delta/epsilon.
  double laplace_scale() const { return sensitivity_ / budget_.epsilon(); }

 private:
  PrivacyParams(PrivacyBudget budget, double sensitivity)
      : budget_(budget), sensitivity_(sensitivity) {}

  PrivacyBudget budget_;
  double sensitivity_;
};

}  // namespace dpsc

#endif  // DPSC_PRIVACY_PARAMS_H_
