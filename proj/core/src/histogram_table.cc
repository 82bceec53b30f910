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

#include "dpsc/histogram_table.h"

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "absl/strings/str_cat.h"
#include "dpsc/status.h"

namespace dpsc {

bool IsGroupKind(ColumnKind kind) {
  return kind == ColumnKind::kGroupString || kind == ColumnKind::kGroupInt64;
}

const char* ColumnKindName(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::kGroupString:
      return "group_string";
    case ColumnKind::kGroupInt64:
      return "group_int64";
    case ColumnKind::kSumInt64:
      return "sum_int64";
    case ColumnKind::kSumDouble:
      return "sum_double";
  }
  return "unknown";
}

ColumnSchema::ColumnSchema(std::vector<ColumnSpec> columns)
    : columns_(std::move(columns)) {
  for (size_t i = 0; i < columns_.size(); ++i) {
    (IsGroupKind(columns_[i].kind) ? group_columns_ : sum_columns_)
        .push_back(i);
  }
}

absl::StatusOr<ColumnSchema> ColumnSchema::Create(
    std::vector<ColumnSpec> columns) {
  for (const ColumnSpec& column : columns) {
    if (column.kind == ColumnKind::kGroupString && column.max_len < 1) {
      return SchemaViolationError(absl::StrCat(
          "string column '", column.name, "' needs max_len >= 1, got ",
          column.max_len));
    }
  }
  ColumnSchema schema(std::move(columns));
  if (schema.group_columns_.empty()) {
    return SchemaViolationError("schema needs at least one group column");
  }
  if (schema.sum_columns_.empty()) {
    return SchemaViolationError("schema needs at least one sum column");
  }
  return schema;
}

absl::Status ColumnSchema::ValidateKey(const GroupKey& key) const {
  if (key.size() != group_columns_.size()) {
    return SchemaViolationError(absl::StrCat("key has ", key.size(),
                                             " components, schema has ",
                                             group_columns_.size()));
  }
  for (size_t i = 0; i < key.size(); ++i) {
    const ColumnSpec& column = group_column(i);
    if (column.kind == ColumnKind::kGroupString) {
      const auto* s = std::get_if<std::string>(&key[i]);
      if (s == nullptr) {
        return SchemaViolationError(
            absl::StrCat("column '", column.name, "' expects a string"));
      }
      if (static_cast<int64_t>(s->size()) > column.max_len) {
        return SchemaViolationError(absl::StrCat(
            "value of length ", s->size(), " exceeds max_len ",
            column.max_len, " of column '", column.name, "'"));
      }
    } else if (!std::holds_alternative<int64_t>(key[i])) {
      return SchemaViolationError(
          absl::StrCat("column '", column.name, "' expects an int64"));
    }
  }
  return absl::OkStatus();
}

absl::Status ColumnSchema::ValidateValues(const SumValues& values) const {
  if (values.size() != sum_columns_.size()) {
    return SchemaViolationError(absl::StrCat("row has ", values.size(),
                                             " values, schema has ",
                                             sum_columns_.size()));
  }
  for (size_t i = 0; i < values.size(); ++i) {
    const ColumnSpec& column = sum_column(i);
    const bool ok = column.kind == ColumnKind::kSumInt64
                        ? std::holds_alternative<int64_t>(values[i])
                        : std::holds_alternative<double>(values[i]);
    if (!ok) {
      return SchemaViolationError(absl::StrCat(
          "column '", column.name, "' expects ", ColumnKindName(column.kind)));
    }
  }
  return absl::OkStatus();
}

SumValues ColumnSchema::ZeroValues() const {
  SumValues zeros;
  zeros.reserve(sum_columns_.size());
  for (size_t i = 0; i < sum_columns_.size(); ++i) {
    if (sum_column(i).kind == ColumnKind::kSumInt64) {
      zeros.emplace_back(int64_t{0});
    } else {
      zeros.emplace_back(0.0);
    }
  }
  return zeros;
}

void AddValues(const SumValues& delta, SumValues* acc) {
  for (size_t i = 0; i < acc->size(); ++i) {
    std::visit(
        [&](auto& a) {
          using T = std::decay_t<decltype(a)>;
          a += std::get<T>(delta[i]);
        },
        (*acc)[i]);
  }
}

absl::Status HistogramTable::Insert(GroupKey key, SumValues values) {
  DPSC_RETURN_IF_ERROR(schema_.ValidateKey(key));
  DPSC_RETURN_IF_ERROR(schema_.ValidateValues(values));
  auto [it, inserted] = rows_.try_emplace(std::move(key), std::move(values));
  if (!inserted) {
    return SchemaViolationError("duplicate group key");
  }
  return absl::OkStatus();
}

absl::Status HistogramTable::Accumulate(const GroupKey& key,
                                        const SumValues& values) {
  DPSC_RETURN_IF_ERROR(schema_.ValidateKey(key));
  DPSC_RETURN_IF_ERROR(schema_.ValidateValues(values));
  auto it = rows_.find(key);
  if (it == rows_.end()) {
    rows_.emplace(key, values);
  } else {
    AddValues(values, &it->second);
  }
  return absl::OkStatus();
}

const SumValues* HistogramTable::Find(const GroupKey& key) const {
  auto it = rows_.find(key);
  return it == rows_.end() ? nullptr : &it->second;
}

}  // namespace dpsc
