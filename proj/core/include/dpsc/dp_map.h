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

#ifndef DPSC_DP_MAP_H_
#define DPSC_DP_MAP_H_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "dpsc/noise_source.h"
#include "dpsc/privacy_params.h"
#include "dpsc/sparse_vector.h"
#include "dpsc/status.h"

namespace dpsc {

// One call to Resize. `write_index` is the 0-based index of the write that
// triggered it (-1 if Resize was called before any write).
struct ResizeEvent {
  int64_t write_index;
  int64_t old_capacity;
  int64_t new_capacity;

  friend bool operator==(const ResizeEvent&, const ResizeEvent&) = default;
};

struct DpMapOptions {
  int64_t initial_capacity = 4;
  // Must be >= 2; the private schedule relies on one write never re-crossing
  // the new capacity right after a resize.
  int64_t growth_factor = 2;
  // Keys one contributor may insert as a batch. Epsilon is divided by it.
  int64_t contribution_multiplier = 1;
};

// An open-addressing associative map whose slot array is exactly `capacity`
// slots long, so allocated memory is capacity * sizeof(Slot) and changes only
// at Resize.
//
// Write() follows the deterministic schedule "resize once load reaches
// capacity", which leaks through allocation whether a write introduced a new
// key. PrivateWrite() instead decides resizes with a strict UDS AboveThreshold
// on the adjusted load max(previous capacity, load), so the vector of resize
// bits is (epsilon, delta)-DP while load never exceeds capacity.
//
// Single-owner mutable structure; not safe for concurrent mutation.
template <typename K, typename V, typename Hash = std::hash<K>>
class DpMap {
 public:
  struct Slot {
    K key;
    V value;
  };

  // A map supporting only the deterministic Write().
  static absl::StatusOr<DpMap> Create(DpMapOptions options = {}) {
    if (auto s = ValidateOptions(options); !s.ok()) return s;
    return DpMap(options);
  }

  // A map that also supports PrivateWrite(). Query noise (one draw per
  // PrivateWrite) and threshold noise (one draw at construction and one per
  // resize) come from `query_noise` and `threshold_noise`; pass the same
  // source twice, or omit the second, to take both in call order. The
  // sources must outlive the map.
  static absl::StatusOr<DpMap> CreatePrivate(
      DpMapOptions options, const PrivacyBudget& budget,
      NoiseSource* query_noise, NoiseSource* threshold_noise = nullptr) {
    if (auto s = ValidateOptions(options); !s.ok()) return s;
    if (query_noise == nullptr) {
      return absl::InvalidArgumentError("query_noise must be set");
    }
    DPSC_ASSIGN_OR_RETURN(
        PrivacyBudget effective,
        PrivacyBudget::Create(
            budget.epsilon() /
                static_cast<double>(options.contribution_multiplier),
            budget.delta()));
    DpMap map(options);
    PrivateState state;
    state.query_noise = query_noise;
    state.threshold_noise =
        threshold_noise != nullptr ? threshold_noise : query_noise;
    state.scale = 2.0 / effective.epsilon();
    state.shift = 2.0 * StrictThresholdShift(effective, state.scale);
    map.private_ = state;
    map.ResetNoisedCapacity();
    return map;
  }

  int64_t GetLoad() const { return load_; }
  int64_t GetCapacity() const { return static_cast<int64_t>(slots_.size()); }
  // The capacity at which the previous Resize happened; 0 before the first.
  int64_t GetPreviousCapacity() const { return previous_capacity_; }
  double GetNoisedCapacity() const { return noised_capacity_; }
  void SetNoisedCapacity(double value) { noised_capacity_ = value; }
  bool is_private() const { return private_.has_value(); }

  bool Present(const K& key) const { return Find(key).has_value(); }

  // KeyAbsent if `key` is not present.
  absl::StatusOr<V> Read(const K& key) const {
    std::optional<size_t> slot = Find(key);
    if (!slot.has_value()) return KeyAbsentError("key not present");
    return slots_[*slot]->value;
  }

  // All pairs in ascending key order.
  std::vector<std::pair<K, V>> Dump() const {
    std::vector<std::pair<K, V>> out;
    out.reserve(static_cast<size_t>(load_));
    for (const auto& slot : slots_) {
      if (slot.has_value()) out.emplace_back(slot->key, slot->value);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  // Multiplies capacity by the growth factor and rehashes every entry.
  void Resize() {
    const int64_t old_capacity = GetCapacity();
    const int64_t new_capacity = old_capacity * options_.growth_factor;
    std::vector<std::optional<Slot>> old_slots = std::move(slots_);
    slots_ = std::vector<std::optional<Slot>>(static_cast<size_t>(new_capacity));
    for (auto& slot : old_slots) {
      if (slot.has_value()) {
        slots_[Probe(slot->key)] = std::move(slot);
      }
    }
    previous_capacity_ = old_capacity;
    resize_log_.push_back({writes_ - 1, old_capacity, new_capacity});
  }

  // Upsert, then resize if GetLoad() >= GetCapacity().
  void Write(K key, V value) {
    ++writes_;
    Upsert(std::move(key), std::move(value));
    if (GetLoad() >= GetCapacity()) Resize();
  }

  // Upsert, then resize iff AdjustedLoad >= capacity or
  // AdjustedLoad + nu >= noised capacity, where
  // AdjustedLoad = max(GetPreviousCapacity(), GetLoad()) and
  // nu ~ Laplace(2 / eps). After a resize the noised capacity is redrawn as
  // new capacity + Laplace(2 / eps) - 2q. Returns whether Resize was called.
  //
  // Requires a map built with CreatePrivate.
  bool PrivateWrite(K key, V value) {
    if (!private_.has_value()) {
      std::fprintf(stderr, "DpMap::PrivateWrite on a non-private map\n");
      std::abort();
    }
    ++writes_;
    Upsert(std::move(key), std::move(value));
    const int64_t adjusted_load = std::max(GetPreviousCapacity(), GetLoad());
    const double nu = private_->query_noise->Laplace(private_->scale);
    if (adjusted_load >= GetCapacity() ||
        static_cast<double>(adjusted_load) + nu >= noised_capacity_) {
      Resize();
      ResetNoisedCapacity();
      return true;
    }
    return false;
  }

  const std::vector<ResizeEvent>& resize_log() const { return resize_log_; }
  int64_t writes() const { return writes_; }
  size_t allocated_bytes() const { return slots_.size() * sizeof(Slot); }

 private:
  struct PrivateState {
    NoiseSource* query_noise = nullptr;
    NoiseSource* threshold_noise = nullptr;
    double scale = 0;
    double shift = 0;
  };

  explicit DpMap(DpMapOptions options)
      : options_(options),
        slots_(static_cast<size_t>(options.initial_capacity)) {}

  static absl::Status ValidateOptions(const DpMapOptions& options) {
    if (options.initial_capacity < 1) {
      return absl::InvalidArgumentError(absl::StrCat(
          "initial_capacity must be positive, got ", options.initial_capacity));
    }
    if (options.growth_factor < 2) {
      return absl::InvalidArgumentError(absl::StrCat(
          "growth_factor must be at least 2, got ", options.growth_factor));
    }
    if (options.contribution_multiplier < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("contribution_multiplier must be positive, got ",
                       options.contribution_multiplier));
    }
    return absl::OkStatus();
  }

  void ResetNoisedCapacity() {
    noised_capacity_ = static_cast<double>(GetCapacity()) +
                       private_->threshold_noise->Laplace(private_->scale) -
                       private_->shift;
  }

  // First slot holding `key` or, failing that, the first empty slot on its
  // probe sequence. Callers guarantee at least one empty slot.
  size_t Probe(const K& key) const {
    const size_t n = slots_.size();
    size_t i = hasher_(key) % n;
    while (slots_[i].has_value() && !(slots_[i]->key == key)) {
      i = (i + 1) % n;
    }
    return i;
  }

  std::optional<size_t> Find(const K& key) const {
    const size_t n = slots_.size();
    size_t i = hasher_(key) % n;
    for (size_t probes = 0; probes < n; ++probes) {
      if (!slots_[i].has_value()) return std::nullopt;
      if (slots_[i]->key == key) return i;
      i = (i + 1) % n;
    }
    return std::nullopt;
  }

  // Load is below capacity on entry: every write ends with a resize if it
  // reached capacity, so an empty slot exists.
  void Upsert(K key, V value) {
    const size_t i = Probe(key);
    if (slots_[i].has_value()) {
      slots_[i]->value = std::move(value);
    } else {
      slots_[i] = Slot{std::move(key), std::move(value)};
      ++load_;
    }
  }

  DpMapOptions options_;
  Hash hasher_;
  std::vector<std::optional<Slot>> slots_;
  int64_t load_ = 0;
  int64_t previous_capacity_ = 0;
  int64_t writes_ = 0;
  double noised_capacity_ = 0;
  std::optional<PrivateState> private_;
  std::vector<ResizeEvent> resize_log_;
};

// Element counts plus the per-write resize bits, the side-channel transcript
// of the histogram computation.
template <typename K>
struct StreamHistogram {
  std::vector<std::pair<K, int64_t>> counts;
  std::vector<bool> resize_bits;
};

// Counts occurrences of each element by read-increment-write through `map`,
// using PrivateWrite when `use_private_write` is set (which requires a private
// map) and Write otherwise.
template <typename K, typename Hash>
StreamHistogram<K> HistogramFromStream(std::span<const K> stream,
                                       DpMap<K, int64_t, Hash>& map,
                                       bool use_private_write) {
  StreamHistogram<K> result;
  result.resize_bits.reserve(stream.size());
  for (const K& x : stream) {
    int64_t value = 1;
    if (map.Present(x)) value += *map.Read(x);
    if (use_private_write) {
      result.resize_bits.push_back(map.PrivateWrite(x, value));
    } else {
      const size_t before = map.resize_log().size();
      map.Write(x, value);
      result.resize_bits.push_back(map.resize_log().size() != before);
    }
  }
  result.counts = map.Dump();
  return result;
}

}  // namespace dpsc

#endif  // DPSC_DP_MAP_H_
