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

#ifndef DPSC_OVERHEAD_H_
#define DPSC_OVERHEAD_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpsc/histogram_table.h"
#include "dpsc/positive_laplace.h"

namespace dpsc {

struct OverheadOptions {
  std::vector<double> epsilons = {0.5, 1.0, 2.0};
  std::vector<int64_t> group_counts = {256, 512, 1024, 2048};
  double delta = 1e-4;
  int64_t runs = 40;
  int64_t max_groups = 1;
  uint64_t seed = 0;
  TauMode tau_mode = kDefaultTauMode;
};

// Order statistics of the padded message length over `runs` paddings of one
// table, taken at indices runs/10, runs/4, runs/2, 3runs/4 and 9runs/10 of
// the sorted lengths.
struct OverheadRow {
  double epsilon = 0;
  int64_t groups = 0;
  int64_t p10 = 0;
  int64_t p25 = 0;
  int64_t p50 = 0;
  int64_t p75 = 0;
  int64_t p90 = 0;
  int64_t raw_length = 0;

  double MedianRelativeOverhead() const {
    return static_cast<double>(p50 - raw_length) /
           static_cast<double>(raw_length);
  }
};

// The table with `groups` distinct (15-digit id, "android") groups and unit
// sums, in the app/os/clicks/minutes schema.
HistogramTable OverheadTable(int64_t groups);

// One row per (epsilon, group count), epsilons outermost. Cell c pads with a
// source seeded by DeriveSeed(seed, c).
absl::StatusOr<std::vector<OverheadRow>> RunOverhead(
    const OverheadOptions& options);

// Header "epsilon,groups,p10,p25,p50,p75,p90,raw_length" and one line per row.
std::string FormatOverheadCsv(const std::vector<OverheadRow>& rows);

}  // namespace dpsc

#endif  // DPSC_OVERHEAD_H_
