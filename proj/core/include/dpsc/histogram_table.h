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

#ifndef DPSC_HISTOGRAM_TABLE_H_
#define DPSC_HISTOGRAM_TABLE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace dpsc {

enum class ColumnKind { kGroupString, kGroupInt64, kSumInt64, kSumDouble };

bool IsGroupKind(ColumnKind kind);
const char* ColumnKindName(ColumnKind kind);

struct ColumnSpec {
  std::string name;
  ColumnKind kind;
  // Byte-length limit for kGroupString; ignored for the other kinds.
  int64_t max_len = 0;

  static ColumnSpec GroupString(std::string name, int64_t max_len) {
    return {std::move(name), ColumnKind::kGroupString, max_len};
  }
  static ColumnSpec GroupInt64(std::string name) {
    return {std::move(name), ColumnKind::kGroupInt64, 0};
  }
  static ColumnSpec SumInt64(std::string name) {
    return {std::move(name), ColumnKind::kSumInt64, 0};
  }
  static ColumnSpec SumDouble(std::string name) {
    return {std::move(name), ColumnKind::kSumDouble, 0};
  }

  friend bool operator==(const ColumnSpec&, const ColumnSpec&) = default;
};

using GroupValue = std::variant<int64_t, std::string>;
using SumValue = std::variant<int64_t, double>;
using GroupKey = std::vector<GroupValue>;
using SumValues = std::vector<SumValue>;

// Ordered column descriptors of an intermediate histogram. Group columns form
// the key tuple and Sum columns the value vector, each in schema order.
//
// A valid schema has at least one Group and one Sum column, and every
// GroupString column carries a finite max_len >= 1: without a hard limit on
// string length no length-sensitivity bound exists.
class ColumnSchema {
 public:
  // An empty (invalid) schema; only useful as a placeholder before assignment.
  ColumnSchema() = default;

  static absl::StatusOr<ColumnSchema> Create(std::vector<ColumnSpec> columns);

  const std::vector<ColumnSpec>& columns() const { return columns_; }
  size_t num_group_columns() const { return group_columns_.size(); }
  size_t num_sum_columns() const { return sum_columns_.size(); }
  // Schema positions of the Group (resp. Sum) columns, in order.
  const std::vector<size_t>& group_columns() const { return group_columns_; }
  const std::vector<size_t>& sum_columns() const { return sum_columns_; }

  const ColumnSpec& group_column(size_t key_index) const {
    return columns_[group_columns_[key_index]];
  }
  const ColumnSpec& sum_column(size_t value_index) const {
    return columns_[sum_columns_[value_index]];
  }

  absl::Status ValidateKey(const GroupKey& key) const;
  absl::Status ValidateValues(const SumValues& values) const;

  // Additive identity for the value vector: 0 or 0.0 per Sum column.
  SumValues ZeroValues() const;

  friend bool operator==(const ColumnSchema& a, const ColumnSchema& b) {
    return a.columns_ == b.columns_;
  }

 private:
  explicit ColumnSchema(std::vector<ColumnSpec> columns);

  std::vector<ColumnSpec> columns_;
  std::vector<size_t> group_columns_;
  std::vector<size_t> sum_columns_;
};

// Adds `delta` into `acc` element-wise. Both must conform to one schema.
void AddValues(const SumValues& delta, SumValues* acc);

// A grouped-sum table: distinct group keys, each mapped to one value vector.
// Rows are held in canonical (lexicographic group-key) order.
class HistogramTable {
 public:
  using Rows = std::map<GroupKey, SumValues>;

  explicit HistogramTable(ColumnSchema schema) : schema_(std::move(schema)) {}

  // Adds a new row. SchemaViolation if it does not conform or the key is
  // already present.
  absl::Status Insert(GroupKey key, SumValues values);

  // Adds `values` into the row for `key`, creating it if absent.
  absl::Status Accumulate(const GroupKey& key, const SumValues& values);

  const ColumnSchema& schema() const { return schema_; }
  const Rows& rows() const { return rows_; }
  size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  const SumValues* Find(const GroupKey& key) const;

  friend bool operator==(const HistogramTable& a, const HistogramTable& b) {
    return a.schema_ == b.schema_ && a.rows_ == b.rows_;
  }

 private:
  ColumnSchema schema_;
  Rows rows_;
};

}  // namespace dpsc

#endif  // DPSC_HISTOGRAM_TABLE_H_
