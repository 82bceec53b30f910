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

#include "dpsc/observation_trace.h"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace dpsc {

absl::Status ObservationTrace::AppendMessageLength(int leaf_id, int64_t bytes) {
  if (bytes <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("message length must be positive, got ", bytes));
  }
  observations_.emplace_back(MessageLengthObservation{leaf_id, bytes});
  return absl::OkStatus();
}

absl::Status ObservationTrace::AppendResize(int leaf_id,
                                            const ResizeEvent& event) {
  if (event.new_capacity <= event.old_capacity) {
    return absl::InvalidArgumentError("resize must increase capacity");
  }
  auto it = last_capacity_.find(leaf_id);
  if (it != last_capacity_.end() && event.old_capacity < it->second) {
    return absl::InvalidArgumentError(
        absl::StrCat("capacity of leaf ", leaf_id, " went backwards"));
  }
  last_capacity_[leaf_id] = event.new_capacity;
  observations_.emplace_back(ResizeObservation{
      leaf_id, event.write_index, event.old_capacity, event.new_capacity});
  return absl::OkStatus();
}

std::vector<MessageLengthObservation> ObservationTrace::MessageLengths() const {
  std::vector<MessageLengthObservation> out;
  for (const Observation& o : observations_) {
    if (const auto* m = std::get_if<MessageLengthObservation>(&o)) {
      out.push_back(*m);
    }
  }
  return out;
}

std::vector<ResizeObservation> ObservationTrace::Resizes(int leaf_id) const {
  std::vector<ResizeObservation> out;
  for (const Observation& o : observations_) {
    if (const auto* r = std::get_if<ResizeObservation>(&o);
        r != nullptr && r->leaf_id == leaf_id) {
      out.push_back(*r);
    }
  }
  return out;
}

int64_t ObservationTrace::TotalMessageBytes() const {
  int64_t total = 0;
  for (const MessageLengthObservation& m : MessageLengths()) total += m.bytes;
  return total;
}

std::string ObservationTrace::ToJsonLines() const {
  std::string out;
  for (const Observation& o : observations_) {
    nlohmann::ordered_json record;
    if (const auto* m = std::get_if<MessageLengthObservation>(&o)) {
      record["type"] = "message";
      record["leaf"] = m->leaf_id;
      record["bytes"] = m->bytes;
    } else {
      const auto& r = std::get<ResizeObservation>(o);
      record["type"] = "resize";
      record["leaf"] = r.leaf_id;
      record["write_index"] = r.write_index;
      record["old_capacity"] = r.old_capacity;
      record["new_capacity"] = r.new_capacity;
    }
    out += record.dump();
    out += '\n';
  }
  return out;
}

}  // namespace dpsc
