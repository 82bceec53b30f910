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

#ifndef DPSC_VARINT_H_
#define DPSC_VARINT_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"

namespace dpsc {

inline constexpr int kMaxVarintBytes = 10;

// Base-128 little-endian groups with the continuation bit 0x80 set on every
// byte but the last. 1 to 10 bytes.
std::string VarintEncode(uint64_t value);
void AppendVarint(uint64_t value, std::string* out);

// Number of bytes VarintEncode(value) produces.
int VarintSize(uint64_t value);

struct DecodedVarint {
  uint64_t value;
  size_t bytes_consumed;
};

// Decodes the varint at the front of `bytes`. Only the canonical (shortest)
// encoding of each value is accepted, so decoding is the exact inverse of
// VarintEncode. Fails with MalformedVarint on a missing terminator within 10
// bytes, a value above 2^64 - 1, or a non-minimal encoding.
absl::StatusOr<DecodedVarint> VarintDecode(std::string_view bytes);

// Upper bound on |VarintSize(a) - VarintSize(b)| over all a, b with
// |a - b| <= max_change.
int VarintWidthGrowth(uint64_t max_change);

}  // namespace dpsc

#endif  // DPSC_VARINT_H_
