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

#include "dpsc/overhead.h"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dpsc/noise_source.h"
#include "dpsc/padding.h"
#include "dpsc/privacy_params.h"
#include "dpsc/records_io.h"
#include "dpsc/serialization.h"
#include "dpsc/status.h"

namespace dpsc {

HistogramTable OverheadTable(int64_t groups) {
  ColumnSchema schema = *ColumnSchema::Create(
      {ColumnSpec::GroupString("app", 15), ColumnSpec::GroupString("os", 8),
       ColumnSpec::SumDouble("clicks"), ColumnSpec::SumDouble("minutes")});
  HistogramTable table(schema);
  for (int64_t g = 0; g < groups; ++g) {
    (void)table.Insert({absl::StrFormat("%015d", g), std::string("android")},
                       {1.0, 1.0});
  }
  return table;
}

absl::StatusOr<std::vector<OverheadRow>> RunOverhead(
    const OverheadOptions& options) {
  if (options.runs < 10) {
    return absl::InvalidArgumentError(
        absl::StrCat("overhead needs at least 10 runs, got ", options.runs));
  }
  if (options.epsilons.empty() || options.group_counts.empty()) {
    return absl::InvalidArgumentError(
        "overhead needs at least one epsilon and one group count");
  }
  for (int64_t groups : options.group_counts) {
    if (groups < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("group counts must be positive, got ", groups));
    }
  }
  std::vector<OverheadRow> rows;
  uint64_t cell = 0;
  for (double epsilon : options.epsilons) {
    DPSC_ASSIGN_OR_RETURN(PrivacyBudget budget,
                          PrivacyBudget::Create(epsilon, options.delta));
    for (int64_t groups : options.group_counts) {
      const HistogramTable table = OverheadTable(groups);
      const std::string raw = SerializeHistogram(table);
      const PaddedPayload unpadded = PaddedPayload::Unpadded(raw);
      std::vector<int64_t> lengths;
      lengths.reserve(options.runs);
      SeededNoiseSource noise(DeriveSeed(options.seed, cell++));
      for (int64_t r = 0; r < options.runs; ++r) {
        DPSC_ASSIGN_OR_RETURN(
            PaddedPayload padded,
            PadSerialize(table, budget, options.max_groups, options.tau_mode,
                         noise));
        lengths.push_back(static_cast<int64_t>(padded.size()));
      }
      std::sort(lengths.begin(), lengths.end());
      const int64_t n = options.runs;
      OverheadRow row;
      row.epsilon = epsilon;
      row.groups = groups;
      row.p10 = lengths[n / 10];
      row.p25 = lengths[n / 4];
      row.p50 = lengths[n / 2];
      row.p75 = lengths[3 * n / 4];
      row.p90 = lengths[9 * n / 10];
      row.raw_length = static_cast<int64_t>(unpadded.size());
      rows.push_back(row);
    }
  }
  return rows;
}

std::string FormatOverheadCsv(const std::vector<OverheadRow>& rows) {
  std::string out = "epsilon,groups,p10,p25,p50,p75,p90,raw_length\n";
  for (const OverheadRow& r : rows) {
    absl::StrAppend(&out, FormatDouble(r.epsilon), ",", r.groups, ",", r.p10,
                    ",", r.p25, ",", r.p50, ",", r.p75, ",", r.p90, ",",
                    r.raw_length, "\n");
  }
  return out;
}

}  // namespace dpsc
