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

#ifndef DPSC_PADDING_H_
#define DPSC_PADDING_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "dpsc/histogram_table.h"
#include "dpsc/noise_source.h"
#include "dpsc/positive_laplace.h"
#include "dpsc/privacy_params.h"

namespace dpsc {

// varint(payload_len) ++ payload ++ zero padding.
class PaddedPayload {
 public:
  // Checks the layout: a well-formed header, payload_len no larger than what
  // follows it, and nothing but 0x00 after the payload. MalformedPayload
  // otherwise.
  static absl::StatusOr<PaddedPayload> Parse(std::string bytes);

  // Header + payload with no padding. This is what an unmitigated worker
  // sends.
  static PaddedPayload Unpadded(std::string_view payload);

  const std::string& bytes() const { return bytes_; }
  size_t size() const { return bytes_.size(); }
  std::string_view payload() const {
    return std::string_view(bytes_).substr(header_size_, payload_size_);
  }
  size_t header_size() const { return header_size_; }
  size_t padding_size() const {
    return bytes_.size() - header_size_ - payload_size_;
  }

  friend bool operator==(const PaddedPayload& a, const PaddedPayload& b) {
    return a.bytes_ == b.bytes_;
  }

 private:
  PaddedPayload(std::string bytes, size_t header_size, size_t payload_size)
      : bytes_(std::move(bytes)),
        header_size_(header_size),
        payload_size_(payload_size) {}

  friend absl::StatusOr<PaddedPayload> PadSerialize(const HistogramTable&,
                                                    const PrivacyBudget&,
                                                    int64_t, TauMode,
                                                    NoiseSource&);

  std::string bytes_;
  size_t header_size_;
  size_t payload_size_;
};

// Sensitivity of header_len + payload_len, the quantity the padding protects:
// the serialized-length bound plus the width growth of the length header.
int64_t PaddedLengthSensitivity(const ColumnSchema& schema, int64_t max_groups);

// Serializes `table` and pads it so that the total message length is
//   ceil(PositiveLaplace(header_len + payload_len))
// with sensitivity PaddedLengthSensitivity(schema, max_groups). Ceiling is
// monotone post-processing, so the length stays (epsilon, delta)-DP and never
// drops below the unpadded length.
absl::StatusOr<PaddedPayload> PadSerialize(const HistogramTable& table,
                                           const PrivacyBudget& budget,
                                           int64_t max_groups, TauMode mode,
                                           NoiseSource& noise);

// Checks the padding layout and decodes the payload.
absl::StatusOr<HistogramTable> DeserializePadded(const ColumnSchema& schema,
                                                 std::string_view bytes);

}  // namespace dpsc

#endif  // DPSC_PADDING_H_
