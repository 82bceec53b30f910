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

#include "dpsc/varint.h"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "dpsc/status.h"

namespace dpsc {

void AppendVarint(uint64_t value, std::string* out) {
  while (value >= 0x80) {
    out->push_back(static_cast<char>((value & 0x7F) | 0x80));
    value >>= 7;
  }
  out->push_back(static_cast<char>(value));
}

std::string VarintEncode(uint64_t value) {
  std::string out;
  AppendVarint(value, &out);
  return out;
}

int VarintSize(uint64_t value) {
  int size = 1;
  while (value >= 0x80) {
    value >>= 7;
    ++size;
  }
  return size;
}

absl::StatusOr<DecodedVarint> VarintDecode(std::string_view bytes) {
  uint64_t value = 0;
  for (size_t i = 0; i < bytes.size() && i < kMaxVarintBytes; ++i) {
    const uint8_t byte = static_cast<uint8_t>(bytes[i]);
    const uint64_t group = byte & 0x7F;
    if (i == kMaxVarintBytes - 1 && group > 1) {
      return MalformedVarintError("value exceeds 64 bits");
    }
    value |= group << (7 * i);
    if ((byte & 0x80) == 0) {
      if (i > 0 && byte == 0) {
        return MalformedVarintError("non-minimal encoding");
      }
      return DecodedVarint{value, i + 1};
    }
  }
  if (bytes.size() < kMaxVarintBytes) {
    return MalformedVarintError("input ends inside a varint");
  }
  return MalformedVarintError("no terminator within 10 bytes");
}

int VarintWidthGrowth(uint64_t max_change) {
  if (max_change == 0) return 0;
  // Let n' = n + B. If B < 2^bits(n) then n' < 2^(bits(n)+1) and the width
  // grows by at most one group. Otherwise n < B, so n' < 2B while n still
  // takes at least one byte.
  const uint64_t doubled = max_change > std::numeric_limits<uint64_t>::max() / 2
                               ? std::numeric_limits<uint64_t>::max()
                               : 2 * max_change;
  return std::max(1, VarintSize(doubled) - 1);
}

}  // namespace dpsc
