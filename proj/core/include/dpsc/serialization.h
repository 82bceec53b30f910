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

#ifndef DPSC_SERIALIZATION_H_
#define DPSC_SERIALIZATION_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "dpsc/histogram_table.h"

namespace dpsc {

// Wire format of an intermediate histogram (see docs/FORMAT.md).
//
// For each column in schema order: varint(body byte length) ++ body.
//   numeric column (GroupInt64, SumInt64, SumDouble):
//       one 8-byte little-endian value per row, in row order
//   string column (GroupString):
//       varint(row count) ++ varint(byte length) per row ++ the string bytes
// Rows are in canonical (lexicographic group-key) order, so equal tables
// serialize to identical bytes.
std::string SerializeHistogram(const HistogramTable& table);

// Exact inverse of SerializeHistogram under the same schema. Fails with
// MalformedPayload on truncation, trailing bytes, inconsistent row counts or
// rows that are not in strictly increasing key order; with SchemaViolation if
// a string exceeds its column's max_len.
absl::StatusOr<HistogramTable> DeserializeHistogram(const ColumnSchema& schema,
                                                    std::string_view bytes);

// Upper bound, in bytes, on |len(Serialize(T)) - len(Serialize(T'))| for any
// pair of tables whose underlying inputs differ in one contributor, when each
// contributor touches at most `max_groups` groups. Such tables differ by at
// most max_groups removed rows and max_groups added rows.
//
// Counted per column: the worst-case per-row bytes (8 for numerics;
// max_len + its length varint for strings), the width change of the string
// row-count varint, and the width change of the column body-length varint.
// Conservative by construction; see padding_test for measured tightness.
int64_t CalculateSerializeSensitivity(const ColumnSchema& schema,
                                      int64_t max_groups);

}  // namespace dpsc

#endif  // DPSC_SERIALIZATION_H_
