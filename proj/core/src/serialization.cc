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

#include "dpsc/serialization.h"

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "absl/strings/str_cat.h"
#include "dpsc/status.h"
#include "dpsc/varint.h"

namespace dpsc {
namespace {

void AppendFixed64(uint64_t bits, std::string* out) {
  for (int i = 0; i < 8; ++i) {
    out->push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
  }
}

uint64_t ReadFixed64(std::string_view bytes) {
  uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) {
    bits |= static_cast<uint64_t>(static_cast<uint8_t>(bytes[i])) << (8 * i);
  }
  return bits;
}

// Locates column `schema_index` inside a row.
struct CellRef {
  bool is_key;
  size_t index;
};

std::vector<CellRef> CellRefs(const ColumnSchema& schema) {
  std::vector<CellRef> refs(schema.columns().size());
  for (size_t i = 0; i < schema.num_group_columns(); ++i) {
    refs[schema.group_columns()[i]] = {true, i};
  }
  for (size_t i = 0; i < schema.num_sum_columns(); ++i) {
    refs[schema.sum_columns()[i]] = {false, i};
  }
  return refs;
}

std::string EncodeColumnBody(const ColumnSpec& column, CellRef ref,
                             const HistogramTable::Rows& rows) {
  std::string body;
  if (column.kind == ColumnKind::kGroupString) {
    AppendVarint(rows.size(), &body);
    for (const auto& [key, values] : rows) {
      AppendVarint(std::get<std::string>(key[ref.index]).size(), &body);
    }
    for (const auto& [key, values] : rows) {
      body += std::get<std::string>(key[ref.index]);
    }
    return body;
  }
  body.reserve(8 * rows.size());
  for (const auto& [key, values] : rows) {
    uint64_t bits = 0;
    switch (column.kind) {
      case ColumnKind::kGroupInt64:
        bits = static_cast<uint64_t>(std::get<int64_t>(key[ref.index]));
        break;
      case ColumnKind::kSumInt64:
        bits = static_cast<uint64_t>(std::get<int64_t>(values[ref.index]));
        break;
      case ColumnKind::kSumDouble:
        bits = std::bit_cast<uint64_t>(std::get<double>(values[ref.index]));
        break;
      case ColumnKind::kGroupString:
        break;
    }
    AppendFixed64(bits, &body);
  }
  return body;
}

// One decoded column as a flat list of cells.
using DecodedColumn = std::variant<std::vector<std::string>,
                                   std::vector<int64_t>, std::vector<double>>;

absl::StatusOr<DecodedColumn> DecodeColumnBody(const ColumnSpec& column,
                                               std::string_view body) {
  if (column.kind == ColumnKind::kGroupString) {
    auto count = VarintDecode(body);
    if (!count.ok()) {
      return MalformedPayloadError(absl::StrCat(
          "row count of column '", column.name, "': ", count.status().message()));
    }
    body.remove_prefix(count->bytes_consumed);
    if (count->value > body.size()) {
      return MalformedPayloadError(absl::StrCat(
          "row count of column '", column.name, "' exceeds body size"));
    }
    std::vector<uint64_t> lengths;
    lengths.reserve(count->value);
    uint64_t total = 0;
    for (uint64_t i = 0; i < count->value; ++i) {
      auto length = VarintDecode(body);
      if (!length.ok()) {
        return MalformedPayloadError(absl::StrCat(
            "string length in column '", column.name,
            "': ", length.status().message()));
      }
      body.remove_prefix(length->bytes_consumed);
      if (length->value > static_cast<uint64_t>(column.max_len)) {
        return SchemaViolationError(absl::StrCat(
            "string of length ", length->value, " exceeds max_len ",
            column.max_len, " of column '", column.name, "'"));
      }
      lengths.push_back(length->value);
      total += length->value;
    }
    if (total != body.size()) {
      return MalformedPayloadError(absl::StrCat(
          "string bytes of column '", column.name, "' do not match body size"));
    }
    std::vector<std::string> cells;
    cells.reserve(lengths.size());
    for (uint64_t length : lengths) {
      cells.emplace_back(body.substr(0, length));
      body.remove_prefix(length);
    }
    return cells;
  }

  if (body.size() % 8 != 0) {
    return MalformedPayloadError(absl::StrCat(
        "numeric column '", column.name, "' body is not a multiple of 8"));
  }
  const size_t n = body.size() / 8;
  if (column.kind == ColumnKind::kSumDouble) {
    std::vector<double> cells(n);
    for (size_t i = 0; i < n; ++i) {
      cells[i] = std::bit_cast<double>(ReadFixed64(body.substr(8 * i, 8)));
    }
    return cells;
  }
  std::vector<int64_t> cells(n);
  for (size_t i = 0; i < n; ++i) {
    cells[i] = static_cast<int64_t>(ReadFixed64(body.substr(8 * i, 8)));
  }
  return cells;
}

size_t CellCount(const DecodedColumn& column) {
  return std::visit([](const auto& cells) { return cells.size(); }, column);
}

}  // namespace

std::string SerializeHistogram(const HistogramTable& table) {
  const ColumnSchema& schema = table.schema();
  const std::vector<CellRef> refs = CellRefs(schema);
  std::string out;
  for (size_t c = 0; c < schema.columns().size(); ++c) {
    const std::string body =
        EncodeColumnBody(schema.columns()[c], refs[c], table.rows());
    AppendVarint(body.size(), &out);
    out += body;
  }
  return out;
}

absl::StatusOr<HistogramTable> DeserializeHistogram(const ColumnSchema& schema,
                                                    std::string_view bytes) {
  std::vector<DecodedColumn> columns;
  columns.reserve(schema.columns().size());
  for (const ColumnSpec& column : schema.columns()) {
    auto body_len = VarintDecode(bytes);
    if (!body_len.ok()) {
      return MalformedPayloadError(absl::StrCat(
          "body length of column '", column.name,
          "': ", body_len.status().message()));
    }
    bytes.remove_prefix(body_len->bytes_consumed);
    if (body_len->value > bytes.size()) {
      return MalformedPayloadError(
          absl::StrCat("column '", column.name, "' is truncated"));
    }
    auto decoded = DecodeColumnBody(column, bytes.substr(0, body_len->value));
    if (!decoded.ok()) return decoded.status();
    bytes.remove_prefix(body_len->value);
    columns.push_back(*std::move(decoded));
  }
  if (!bytes.empty()) {
    return MalformedPayloadError(
        absl::StrCat(bytes.size(), " trailing bytes after the last column"));
  }

  const size_t num_rows = columns.empty() ? 0 : CellCount(columns.front());
  for (const DecodedColumn& column : columns) {
    if (CellCount(column) != num_rows) {
      return MalformedPayloadError("columns disagree on the row count");
    }
  }

  const std::vector<CellRef> refs = CellRefs(schema);
  HistogramTable table(schema);
  const GroupKey* previous = nullptr;
  for (size_t r = 0; r < num_rows; ++r) {
    GroupKey key(schema.num_group_columns());
    SumValues values(schema.num_sum_columns());
    for (size_t c = 0; c < columns.size(); ++c) {
      std::visit(
          [&](const auto& cells) {
            using Cell = typename std::decay_t<decltype(cells)>::value_type;
            if constexpr (std::is_same_v<Cell, std::string>) {
              key[refs[c].index] = cells[r];
            } else if constexpr (std::is_same_v<Cell, double>) {
              values[refs[c].index] = cells[r];
            } else if (refs[c].is_key) {
              key[refs[c].index] = cells[r];
            } else {
              values[refs[c].index] = cells[r];
            }
          },
          columns[c]);
    }
    if (previous != nullptr && !(*previous < key)) {
      return MalformedPayloadError("rows are not in canonical key order");
    }
    DPSC_RETURN_IF_ERROR(table.Insert(key, std::move(values)));
    previous = &table.rows().find(key)->first;
  }
  return table;
}

int64_t CalculateSerializeSensitivity(const ColumnSchema& schema,
                                      int64_t max_groups) {
  const uint64_t groups = static_cast<uint64_t>(max_groups);
  int64_t bound = 0;
  for (const ColumnSpec& column : schema.columns()) {
    uint64_t body_change = 0;
    if (column.kind == ColumnKind::kGroupString) {
      const uint64_t max_len = static_cast<uint64_t>(column.max_len);
      const uint64_t row_bytes = max_len + VarintSize(max_len);
      body_change = groups * row_bytes + VarintWidthGrowth(groups);
    } else {
      body_change = groups * 8;
    }
    bound += static_cast<int64_t>(body_change) + VarintWidthGrowth(body_change);
  }
  return bound;
}

}  // namespace dpsc
