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

#include "dpsc/privacy_params.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpsc {

absl::StatusOr<PrivacyBudget> PrivacyBudget::Create(double epsilon,
                                                    double delta) {
  if (!std::isfinite(epsilon) || epsilon <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("Epsilon must be finite and positive, but is ", epsilon));
  }
  if (!(delta > 0 && delta < 0.5)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Delta must be in (0, 0.5), but is ", delta));
  }
  return PrivacyBudget(epsilon, delta);
}

absl::StatusOr<PrivacyParams> PrivacyParams::Create(double epsilon,
                                                    double delta,
                                                    double sensitivity) {
  absl::StatusOr<PrivacyBudget> budget = PrivacyBudget::Create(epsilon, delta);
  if (!budget.ok()) return budget.status();
  return Create(*budget, sensitivity);
}

absl::StatusOr<PrivacyParams> PrivacyParams::Create(const PrivacyBudget& budget,
                                                    double sensitivity) {
  if (!std::isfinite(sensitivity) || sensitivity <= 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Sensitivity must be finite and positive, but is ", sensitivity));
  }
  return PrivacyParams(budget, sensitivity);
}

}  // namespace dpsc
