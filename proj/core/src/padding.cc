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

#include "dpsc/padding.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpsc/serialization.h"
#include "dpsc/status.h"
#include "dpsc/varint.h"

namespace dpsc {

absl::StatusOr<PaddedPayload> PaddedPayload::Parse(std::string bytes) {
  auto header = VarintDecode(bytes);
  if (!header.ok()) {
    return MalformedPayloadError(
        absl::StrCat("length header: ", header.status().message()));
  }
  const size_t available = bytes.size() - header->bytes_consumed;
  if (header->value > available) {
    return MalformedPayloadError(absl::StrCat(
        "payload length ", header->value, " exceeds the ", available,
        " bytes after the header"));
  }
  const size_t payload_size = static_cast<size_t>(header->value);
  const size_t padding_start = header->bytes_consumed + payload_size;
  if (std::any_of(bytes.begin() + padding_start, bytes.end(),
                  [](char c) { return c != '\0'; })) {
    return MalformedPayloadError("non-zero byte in padding");
  }
  return PaddedPayload(std::move(bytes), header->bytes_consumed, payload_size);
}

PaddedPayload PaddedPayload::Unpadded(std::string_view payload) {
  std::string bytes = VarintEncode(payload.size());
  const size_t header_size = bytes.size();
  bytes.append(payload);
  return PaddedPayload(std::move(bytes), header_size, payload.size());
}

int64_t PaddedLengthSensitivity(const ColumnSchema& schema,
                                int64_t max_groups) {
  const int64_t body = CalculateSerializeSensitivity(schema, max_groups);
  return body + VarintWidthGrowth(static_cast<uint64_t>(body));
}

absl::StatusOr<PaddedPayload> PadSerialize(const HistogramTable& table,
                                           const PrivacyBudget& budget,
                                           int64_t max_groups, TauMode mode,
                                           NoiseSource& noise) {
  if (max_groups < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("max_groups must be positive, got ", max_groups));
  }
  const std::string payload = SerializeHistogram(table);
  DPSC_ASSIGN_OR_RETURN(
      PrivacyParams params,
      PrivacyParams::Create(
          budget, static_cast<double>(
                      PaddedLengthSensitivity(table.schema(), max_groups))));

  const size_t header_size = static_cast<size_t>(VarintSize(payload.size()));
  const size_t unpadded = header_size + payload.size();
  const double noisy = PositiveLaplace(static_cast<double>(unpadded), params,
                                       mode, noise);
  const size_t total = std::max(unpadded, static_cast<size_t>(std::ceil(noisy)));

  std::string bytes = VarintEncode(payload.size());
  bytes.reserve(total);
  bytes += payload;
  bytes.resize(total, '\0');
  return PaddedPayload(std::move(bytes), header_size, payload.size());
}

absl::StatusOr<HistogramTable> DeserializePadded(const ColumnSchema& schema,
                                                 std::string_view bytes) {
  DPSC_ASSIGN_OR_RETURN(PaddedPayload padded,
                        PaddedPayload::Parse(std::string(bytes)));
  return DeserializeHistogram(schema, padded.payload());
}

}  // namespace dpsc
