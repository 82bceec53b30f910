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

#ifndef DPSC_OBSERVATION_TRACE_H_
#define DPSC_OBSERVATION_TRACE_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "dpsc/dp_map.h"

namespace dpsc {

// A leaf-to-root message as seen on the wire: only its length.
struct MessageLengthObservation {
  int leaf_id;
  int64_t bytes;

  friend bool operator==(const MessageLengthObservation&,
                         const MessageLengthObservation&) = default;
};

// A change in a leaf's allocated memory, standing in for a page-fault spike.
struct ResizeObservation {
  int leaf_id;
  int64_t write_index;
  int64_t old_capacity;
  int64_t new_capacity;

  friend bool operator==(const ResizeObservation&,
                         const ResizeObservation&) = default;
};

using Observation = std::variant<MessageLengthObservation, ResizeObservation>;

// Append-only side-channel transcript of one pipeline run.
class ObservationTrace {
 public:
  // Lengths must be positive.
  absl::Status AppendMessageLength(int leaf_id, int64_t bytes);
  // Capacities must grow within an event and across events of one leaf.
  absl::Status AppendResize(int leaf_id, const ResizeEvent& event);

  std::span<const Observation> observations() const { return observations_; }

  std::vector<MessageLengthObservation> MessageLengths() const;
  std::vector<ResizeObservation> Resizes(int leaf_id) const;
  int64_t TotalMessageBytes() const;

  // One JSON object per line, in append order.
  std::string ToJsonLines() const;

  friend bool operator==(const ObservationTrace& a, const ObservationTrace& b) {
    return a.observations_ == b.observations_;
  }

 private:
  std::vector<Observation> observations_;
  std::map<int, int64_t> last_capacity_;
};

}  // namespace dpsc

#endif  // DPSC_OBSERVATION_TRACE_H_
