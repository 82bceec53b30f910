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

#include "dpsc/positive_laplace.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpsc {

absl::StatusOr<double> LaplaceQuantileAbs(double phi, double scale) {
  if (!(phi > 0 && phi < 0.5)) {
    return absl::OutOfRangeError(
        absl::StrCat("Quantile level must be in (0, 0.5), but is ", phi));
  }
  if (!std::isfinite(scale) || scale <= 0) {
    return absl::OutOfRangeError(
        absl::StrCat("Laplace scale must be finite and positive, but is ",
                     scale));
  }
  return scale * std::log(1.0 / (2.0 * phi));
}

const char* TauModeName(TauMode mode) {
  switch (mode) {
    case TauMode::kSimple:
      return "simple";
    case TauMode::kBespoke:
      return "bespoke";
  }
  return "unknown";
}

double ComputeTau(const PrivacyParams& params, TauMode mode) {
  const double scale = params.laplace_scale();
  const double log_inv_two_delta = -std::log(2.0 * params.delta());
  switch (mode) {
    case TauMode::kSimple: {
      // ln((1 + e^eps) / (2 delta)) with ln(1 + e^eps) = eps + log1p(e^-eps).
      const double eps = params.epsilon();
      return scale * (eps + std::log1p(std::exp(-eps)) + log_inv_two_delta);
    }
    case TauMode::kBespoke:
      return params.sensitivity() + scale * log_inv_two_delta;
  }
  return 0.0;
}

PositiveLaplaceMechanism::PositiveLaplaceMechanism(const PrivacyParams& params,
                                                   TauMode mode)
    : params_(params),
      mode_(mode),
      tau_(ComputeTau(params, mode)),
      scale_(params.laplace_scale()) {}

double PositiveLaplaceMechanism::Apply(double value, NoiseSource& noise) const {
  const double shifted = value + tau_ + noise.Laplace(scale_);
  return std::max(value, shifted);
}

double PositiveLaplace(double value, const PrivacyParams& params, TauMode mode,
                       NoiseSource& noise) {
  return PositiveLaplaceMechanism(params, mode).Apply(value, noise);
}

}  // namespace dpsc
