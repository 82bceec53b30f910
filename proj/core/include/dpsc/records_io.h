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

#ifndef DPSC_RECORDS_IO_H_
#define DPSC_RECORDS_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "dpsc/aggregator.h"
#include "dpsc/histogram_table.h"

namespace dpsc {

// Contributions read from a records file, in order of first appearance of
// each client id. Rows of one client need not be adjacent.
struct RecordSet {
  ColumnSchema schema;
  std::vector<Contribution> contributions;
};

// Parses the records CSV described in docs/INPUT.md:
//
//   client_id,app:group_string:15,os:group_string:8,clicks:sum_double
//   alice,Reddit,android,1.5
//
// Lines starting with '#' and blank lines are skipped. Fields are trimmed of
// surrounding spaces and tabs; there is no quoting. Errors carry the 1-based
// line number.
absl::StatusOr<RecordSet> ParseRecordsCsv(std::string_view text);

// Same for a column header only ("client_id" excluded), e.g.
// "app:group_string:15,clicks:sum_double".
absl::StatusOr<ColumnSchema> ParseSchemaSpec(std::string_view spec);

// Parses a key=value pipeline config against `schema`. Unknown keys and
// missing bounds are errors. Recognized keys:
//   max_groups, epsilon (total, split 25/25/50), epsilon_pad, epsilon_resize,
//   epsilon_release, delta, num_leaves, tau_mode (simple|bespoke),
//   pad_messages, private_resize, noiseless (true|false), initial_capacity,
//   seed, bounds.<sum column>=<lo>,<hi>
absl::StatusOr<PipelineConfig> ParseConfig(std::string_view text,
                                           const ColumnSchema& schema);

absl::StatusOr<bool> ParseBool(std::string_view text);
absl::StatusOr<TauMode> ParseTauMode(std::string_view text);

// Shortest round-trip decimal form.
std::string FormatDouble(double value);

// CSV with one header line (column names in schema order) and one line per
// row in canonical key order.
std::string FormatTableCsv(const HistogramTable& table);

}  // namespace dpsc

#endif  // DPSC_RECORDS_IO_H_
