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

#include "dpsc/records_io.h"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "absl/strings/strip.h"
#include "dpsc/status.h"

namespace dpsc {
namespace {

absl::string_view Trim(absl::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<absl::string_view> SplitFields(absl::string_view line) {
  std::vector<absl::string_view> fields = absl::StrSplit(line, ',');
  for (auto& f : fields) f = Trim(f);
  return fields;
}

absl::Status AtLine(int line, const absl::Status& status) {
  return absl::Status(status.code(),
                      absl::StrCat("line ", line, ": ", status.message()));
}

absl::StatusOr<ColumnSpec> ParseColumn(absl::string_view field) {
  std::vector<absl::string_view> parts = absl::StrSplit(field, ':');
  if (parts.size() < 2 || parts.size() > 3 || parts[0].empty()) {
    return SchemaViolationError(absl::StrCat(
        "column '", field, "' is not name:kind or name:group_string:max_len"));
  }
  std::string name(parts[0]);
  absl::string_view kind = parts[1];
  if (kind == "group_string") {
    int64_t max_len = 0;
    if (parts.size() != 3 || !absl::SimpleAtoi(parts[2], &max_len)) {
      return SchemaViolationError(
          absl::StrCat("column '", name, "' needs group_string:<max_len>"));
    }
    return ColumnSpec::GroupString(std::move(name), max_len);
  }
  if (parts.size() != 2) {
    return SchemaViolationError(
        absl::StrCat("only group_string takes a length, column '", name, "'"));
  }
  if (kind == "group_int64") return ColumnSpec::GroupInt64(std::move(name));
  if (kind == "sum_int64") return ColumnSpec::SumInt64(std::move(name));
  if (kind == "sum_double") return ColumnSpec::SumDouble(std::move(name));
  return SchemaViolationError(
      absl::StrCat("unknown column kind '", kind, "' for '", name, "'"));
}

absl::StatusOr<ColumnSchema> SchemaFromFields(
    const std::vector<absl::string_view>& fields) {
  std::vector<ColumnSpec> columns;
  std::set<std::string> names;
  for (absl::string_view field : fields) {
    DPSC_ASSIGN_OR_RETURN(ColumnSpec column, ParseColumn(field));
    if (!names.insert(column.name).second) {
      return SchemaViolationError(
          absl::StrCat("duplicate column name '", column.name, "'"));
    }
    columns.push_back(std::move(column));
  }
  return ColumnSchema::Create(std::move(columns));
}

absl::StatusOr<int64_t> ParseInt(absl::string_view text) {
  int64_t value = 0;
  if (!absl::SimpleAtoi(text, &value)) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", text, "' is not a 64-bit integer"));
  }
  return value;
}

absl::StatusOr<double> ParseFiniteDouble(absl::string_view text) {
  double value = 0;
  if (!absl::SimpleAtod(text, &value) || !std::isfinite(value)) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", text, "' is not a finite number"));
  }
  return value;
}

}  // namespace

absl::StatusOr<ColumnSchema> ParseSchemaSpec(std::string_view spec_in) {
  const absl::string_view spec(spec_in.data(), spec_in.size());
  return SchemaFromFields(SplitFields(Trim(spec)));
}

absl::StatusOr<RecordSet> ParseRecordsCsv(std::string_view text_in) {
  const absl::string_view text(text_in.data(), text_in.size());
  RecordSet out;
  bool have_header = false;
  std::unordered_map<std::string, size_t> index_of_client;
  int line_number = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++line_number;
    absl::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::vector<absl::string_view> fields = SplitFields(line);
    if (!have_header) {
      if (fields.front() != "client_id") {
        return AtLine(line_number, SchemaViolationError(
                                       "header must start with client_id"));
      }
      fields.erase(fields.begin());
      auto schema = SchemaFromFields(fields);
      if (!schema.ok()) return AtLine(line_number, schema.status());
      out.schema = *std::move(schema);
      have_header = true;
      continue;
    }
    const auto& columns = out.schema.columns();
    if (fields.size() != columns.size() + 1) {
      return AtLine(line_number,
                    SchemaViolationError(absl::StrCat(
                        "expected ", columns.size() + 1, " fields, got ",
                        fields.size())));
    }
    if (fields[0].empty()) {
      return AtLine(line_number, SchemaViolationError("empty client_id"));
    }
    ContributionRow row;
    for (size_t c = 0; c < columns.size(); ++c) {
      absl::string_view field = fields[c + 1];
      absl::Status status;
      switch (columns[c].kind) {
        case ColumnKind::kGroupString:
          row.key.emplace_back(std::string(field));
          break;
        case ColumnKind::kGroupInt64: {
          auto v = ParseInt(field);
          if (v.ok()) row.key.emplace_back(*v); else status = v.status();
          break;
        }
        case ColumnKind::kSumInt64: {
          auto v = ParseInt(field);
          if (v.ok()) row.values.emplace_back(*v); else status = v.status();
          break;
        }
        case ColumnKind::kSumDouble: {
          auto v = ParseFiniteDouble(field);
          if (v.ok()) row.values.emplace_back(*v); else status = v.status();
          break;
        }
      }
      if (!status.ok()) {
        return AtLine(line_number,
                      absl::InvalidArgumentError(absl::StrCat(
                          "column '", columns[c].name, "': ",
                          status.message())));
      }
    }
    if (auto s = out.schema.ValidateKey(row.key); !s.ok()) {
      return AtLine(line_number, s);
    }
    std::string client(fields[0]);
    auto [it, inserted] =
        index_of_client.try_emplace(client, out.contributions.size());
    if (inserted) out.contributions.push_back(Contribution{client, {}});
    out.contributions[it->second].rows.push_back(std::move(row));
  }
  if (!have_header) {
    return SchemaViolationError("records file has no header line");
  }
  return out;
}

absl::StatusOr<bool> ParseBool(std::string_view text_in) {
  const absl::string_view text(text_in.data(), text_in.size());
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  return absl::InvalidArgumentError(
      absl::StrCat("'", text, "' is not true or false"));
}

absl::StatusOr<TauMode> ParseTauMode(std::string_view text_in) {
  const absl::string_view text(text_in.data(), text_in.size());
  if (text == "simple") return TauMode::kSimple;
  if (text == "bespoke") return TauMode::kBespoke;
  return absl::InvalidArgumentError(
      absl::StrCat("tau_mode must be simple or bespoke, got '", text, "'"));
}

absl::StatusOr<PipelineConfig> ParseConfig(std::string_view text_in,
                                           const ColumnSchema& schema) {
  const absl::string_view text(text_in.data(), text_in.size());
  PipelineConfig config;
  config.schema = schema;
  std::map<std::string, ValueBounds> bounds;
  std::set<std::string> seen;
  std::optional<double> total_epsilon;
  std::optional<double> epsilon_pad;
  std::optional<double> epsilon_resize;
  std::optional<double> epsilon_release;
  int line_number = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++line_number;
    absl::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const size_t eq = line.find('=');
    if (eq == absl::string_view::npos) {
      return AtLine(line_number,
                    absl::InvalidArgumentError("expected key=value"));
    }
    std::string key(Trim(line.substr(0, eq)));
    absl::string_view value = Trim(line.substr(eq + 1));
    if (!seen.insert(key).second) {
      return AtLine(line_number, absl::InvalidArgumentError(
                                     absl::StrCat("duplicate key '", key, "'")));
    }
    absl::Status status;
    auto set_int = [&](int64_t& field) {
      auto v = ParseInt(value);
      if (v.ok()) field = *v; else status = v.status();
    };
    auto set_double = [&](double& field) {
      auto v = ParseFiniteDouble(value);
      if (v.ok()) field = *v; else status = v.status();
    };
    auto set_optional = [&](std::optional<double>& field) {
      auto v = ParseFiniteDouble(value);
      if (v.ok()) field = *v; else status = v.status();
    };
    auto set_bool = [&](bool& field) {
      auto v = ParseBool(std::string_view(value.data(), value.size()));
      if (v.ok()) field = *v; else status = v.status();
    };
    if (key == "max_groups") {
      set_int(config.max_groups);
    } else if (key == "epsilon") {
      set_optional(total_epsilon);
    } else if (key == "epsilon_pad") {
      set_optional(epsilon_pad);
    } else if (key == "epsilon_resize") {
      set_optional(epsilon_resize);
    } else if (key == "epsilon_release") {
      set_optional(epsilon_release);
    } else if (key == "delta") {
      set_double(config.delta);
    } else if (key == "num_leaves") {
      int64_t n = 0;
      set_int(n);
      if (status.ok() && (n < 1 || n > (int64_t{1} << 20))) {
        status = absl::InvalidArgumentError("num_leaves out of range");
      }
      config.num_leaves = static_cast<int>(n);
    } else if (key == "initial_capacity") {
      set_int(config.initial_capacity);
    } else if (key == "seed") {
      uint64_t seed = 0;
      if (absl::SimpleAtoi(value, &seed)) {
        config.seed = seed;
      } else {
        status = absl::InvalidArgumentError(
            absl::StrCat("'", value, "' is not an unsigned 64-bit integer"));
      }
    } else if (key == "tau_mode") {
      auto v = ParseTauMode(std::string_view(value.data(), value.size()));
      if (v.ok()) config.tau_mode = *v; else status = v.status();
    } else if (key == "pad_messages") {
      set_bool(config.pad_messages);
    } else if (key == "private_resize") {
      set_bool(config.private_resize);
    } else if (key == "noiseless") {
      set_bool(config.noiseless);
    } else if (absl::StartsWith(key, "bounds.")) {
      std::vector<absl::string_view> parts = absl::StrSplit(value, ',');
      if (parts.size() != 2) {
        status = absl::InvalidArgumentError("bounds must be <lo>,<hi>");
      } else {
        auto lo = ParseFiniteDouble(Trim(parts[0]));
        auto hi = ParseFiniteDouble(Trim(parts[1]));
        if (!lo.ok()) status = lo.status();
        else if (!hi.ok()) status = hi.status();
        else bounds[key.substr(7)] = ValueBounds{*lo, *hi};
      }
    } else {
      status = absl::InvalidArgumentError(
          absl::StrCat("unknown config key '", key, "'"));
    }
    if (!status.ok()) return AtLine(line_number, status);
  }
  // Per-stage keys override the split of a total, wherever they appear.
  if (total_epsilon.has_value()) config.SetTotalEpsilon(*total_epsilon);
  if (epsilon_pad.has_value()) config.epsilon_pad = *epsilon_pad;
  if (epsilon_resize.has_value()) config.epsilon_resize = *epsilon_resize;
  if (epsilon_release.has_value()) config.epsilon_release = *epsilon_release;
  for (size_t i = 0; i < schema.num_sum_columns(); ++i) {
    const std::string& name = schema.sum_column(i).name;
    auto it = bounds.find(name);
    if (it == bounds.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("missing bounds.", name));
    }
    config.value_bounds.push_back(it->second);
    bounds.erase(it);
  }
  if (!bounds.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "bounds given for unknown sum column '", bounds.begin()->first, "'"));
  }
  DPSC_RETURN_IF_ERROR(config.Validate());
  return config;
}

std::string FormatDouble(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

std::string FormatTableCsv(const HistogramTable& table) {
  const ColumnSchema& schema = table.schema();
  std::vector<std::string> names;
  for (const ColumnSpec& c : schema.columns()) names.push_back(c.name);
  std::string out = absl::StrJoin(names, ",");
  out += '\n';
  for (const auto& [key, values] : table.rows()) {
    std::vector<std::string> cells;
    size_t k = 0;
    size_t v = 0;
    for (const ColumnSpec& c : schema.columns()) {
      if (IsGroupKind(c.kind)) {
        cells.push_back(std::visit(
            [](const auto& x) -> std::string {
              if constexpr (std::is_same_v<std::decay_t<decltype(x)>,
                                           std::string>) {
                return x;
              } else {
                return absl::StrCat(x);
              }
            },
            key[k++]));
      } else {
        cells.push_back(std::visit(
            [](auto x) -> std::string {
              if constexpr (std::is_same_v<decltype(x), double>) {
                return FormatDouble(x);
              } else {
                return absl::StrCat(x);
              }
            },
            values[v++]));
      }
    }
    out += absl::StrJoin(cells, ",");
    out += '\n';
  }
  return out;
}

}  // namespace dpsc
