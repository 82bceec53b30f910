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

#include "dpsc/sparse_vector.h"

#include <cmath>
#include <cstddef>
#include <optional>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpsc/positive_laplace.h"

namespace dpsc {
namespace {

absl::Status ValidateEpsilon(double epsilon) {
  if (!std::isfinite(epsilon) || epsilon <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("Epsilon must be finite and positive, but is ", epsilon));
  }
  return absl::OkStatus();
}

absl::Status ValidateStream(const QueryStream& queries) {
  for (double value : queries.values) {
    if (!std::isfinite(value)) {
      return absl::InvalidArgumentError("query values must be finite");
    }
  }
  return absl::OkStatus();
}

absl::Status RequireUnidirectional(const QueryStream& queries) {
  if (!queries.unidirectional) {
    return absl::InvalidArgumentError(
        "stream is not asserted to have unidirectional sensitivity");
  }
  return absl::OkStatus();
}

// Shared loop: the threshold draw comes first, then one draw per query.
SvtOutput Run(QueryStream queries, double noisy_threshold, double query_scale,
              std::optional<double> hard_threshold, NoiseSource& noise) {
  SvtOutput output;
  output.reserve(queries.values.size());
  for (double value : queries.values) {
    const double nu = noise.Laplace(query_scale);
    const bool hard = hard_threshold.has_value() && value >= *hard_threshold;
    if (hard || value + nu >= noisy_threshold) {
      output.push_back(SvtAnswer::kAbove);
      break;
    }
    output.push_back(SvtAnswer::kBelow);
  }
  return output;
}

}  // namespace

std::optional<size_t> HaltIndex(const SvtOutput& output) {
  if (!output.empty() && output.back() == SvtAnswer::kAbove) {
    return output.size() - 1;
  }
  return std::nullopt;
}

absl::StatusOr<SvtOutput> AboveThresholdTextbook(QueryStream queries,
                                                 double threshold,
                                                 double epsilon,
                                                 NoiseSource& noise) {
  if (auto s = ValidateEpsilon(epsilon); !s.ok()) return s;
  if (auto s = ValidateStream(queries); !s.ok()) return s;
  const double noisy_threshold = threshold + noise.Laplace(2.0 / epsilon);
  return Run(queries, noisy_threshold, 4.0 / epsilon, std::nullopt, noise);
}

absl::StatusOr<SvtOutput> UdsAboveThreshold(QueryStream queries,
                                            double threshold, double epsilon,
                                            NoiseSource& noise) {
  if (auto s = ValidateEpsilon(epsilon); !s.ok()) return s;
  if (auto s = RequireUnidirectional(queries); !s.ok()) return s;
  if (auto s = ValidateStream(queries); !s.ok()) return s;
  const double scale = 2.0 / epsilon;
  const double noisy_threshold = threshold + noise.Laplace(scale);
  return Run(queries, noisy_threshold, scale, std::nullopt, noise);
}

double StrictThresholdShift(const PrivacyBudget& budget, double scale) {
  // |q_phi| with phi = delta / (2 (1 + e^eps)), in log space.
  const double eps = budget.epsilon();
  const double log_one_plus_exp = eps + std::log1p(std::exp(-eps));
  return scale * (log_one_plus_exp - std::log(budget.delta()));
}

absl::StatusOr<SvtOutput> StrictUdsAboveThreshold(QueryStream queries,
                                                  double threshold,
                                                  const PrivacyBudget& budget,
                                                  NoiseSource& noise) {
  if (auto s = RequireUnidirectional(queries); !s.ok()) return s;
  if (auto s = ValidateStream(queries); !s.ok()) return s;
  const double scale = 2.0 / budget.epsilon();
  const double q = StrictThresholdShift(budget, scale);
  const double noisy_threshold = threshold + noise.Laplace(scale) - 2.0 * q;
  return Run(queries, noisy_threshold, scale, threshold, noise);
}

}  // namespace dpsc
