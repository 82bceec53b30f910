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

#ifndef DPSC_SPARSE_VECTOR_H_
#define DPSC_SPARSE_VECTOR_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "dpsc/noise_source.h"
#include "dpsc/privacy_params.h"

namespace dpsc {

enum class SvtAnswer { kBelow, kAbove };

// Answers in query order. At most one kAbove, and if present it is last.
using SvtOutput = std::vector<SvtAnswer>;

// Precomputed query values f_1(D), f_2(D), ...
//
// Every query is assumed 1-sensitive. `unidirectional` is the caller's
// assertion that switching to any neighbor moves all query values in the same
// direction; neither property can be checked from a single dataset's stream.
struct QueryStream {
  std::span<const double> values;
  bool unidirectional = false;
};

// Index (0-based) of the kAbove answer, if any.
std::optional<size_t> HaltIndex(const SvtOutput& output);

// Classic AboveThreshold: threshold noise Laplace(2/eps), per-query noise
// Laplace(4/eps), halt at the first noisy crossing.
absl::StatusOr<SvtOutput> AboveThresholdTextbook(QueryStream queries,
                                                 double threshold,
                                                 double epsilon,
                                                 NoiseSource& noise);

// AboveThreshold for unidirectionally sensitive queries. Unidirectionality
// halves the sensitive interval, so per-query noise drops to Laplace(2/eps)
// for the same eps-DP guarantee. Rejects streams without the UDS assertion.
absl::StatusOr<SvtOutput> UdsAboveThreshold(QueryStream queries,
                                            double threshold, double epsilon,
                                            NoiseSource& noise);

// The shift q used by the strict variant: the 1 - delta / (2 (1 + e^eps))
// quantile of Laplace(scale).
double StrictThresholdShift(const PrivacyBudget& budget, double scale);

// UDS AboveThreshold with a strict stopping condition: the noisy threshold is
// lowered by 2q and the stream halts at the first i with f_i >= T regardless
// of noise. It therefore never answers kBelow once T is reached, at the cost of
// delta.
absl::StatusOr<SvtOutput> StrictUdsAboveThreshold(QueryStream queries,
                                                  double threshold,
                                                  const PrivacyBudget& budget,
                                                  NoiseSource& noise);

}  // namespace dpsc

#endif  // DPSC_SPARSE_VECTOR_H_
