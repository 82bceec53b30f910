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

#ifndef DPSC_POSITIVE_LAPLACE_H_
#define DPSC_POSITIVE_LAPLACE_H_

#include "absl/status/statusor.h"
#include "dpsc/noise_source.h"
#include "dpsc/privacy_params.h"

namespace dpsc {

// |q_phi| for Laplace(0, scale): the value x >= 0 such that a draw falls below
// -x with probability exactly phi. Equals scale * ln(1 / (2 phi)).
// Requires 0 < phi < 1/2 and scale > 0.
absl::StatusOr<double> LaplaceQuantileAbs(double phi, double scale);

// How the shift tau of the positive Laplace mechanism is calibrated.
//   kSimple:  tau = |q_h| with h = delta / (1 + e^epsilon), which is the
//             closeness-to-pure-DP argument.
//   kBespoke: tau = Delta + |q_delta|, a direct three-segment analysis.
// kBespoke is never larger and is the default.
enum class TauMode { kSimple, kBespoke };

inline constexpr TauMode kDefaultTauMode = TauMode::kBespoke;

const char* TauModeName(TauMode mode);

// tau for the given parameters and calibration. Evaluated in log space so
// large epsilons do not overflow e^epsilon.
double ComputeTau(const PrivacyParams& params, TauMode mode);

// Shifted-and-clamped Laplace mechanism: returns max(v, v + tau + eta) with
// eta ~ Laplace(Delta / epsilon). The result is never below the input, which
// makes it usable for quantities that can only be added (padding, delays).
class PositiveLaplaceMechanism {
 public:
  PositiveLaplaceMechanism(const PrivacyParams& params, TauMode mode);

  double Apply(double value, NoiseSource& noise) const;

  double tau() const { return tau_; }
  double scale() const { return scale_; }
  const PrivacyParams& params() const { return params_; }
  TauMode mode() const { return mode_; }

 private:
  PrivacyParams params_;
  TauMode mode_;
  double tau_;
  double scale_;
};

// One-shot form of PositiveLaplaceMechanism::Apply.
double PositiveLaplace(double value, const PrivacyParams& params, TauMode mode,
                       NoiseSource& noise);

}  // namespace dpsc

#endif  // DPSC_POSITIVE_LAPLACE_H_
