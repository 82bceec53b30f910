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

#include "dpsc/noise_source.h"

#include <cmath>
#include <cstdint>
#include <random>

namespace dpsc {

uint64_t DeriveSeed(uint64_t master_seed, uint64_t stream_index) {
  std::seed_seq seq{static_cast<uint32_t>(master_seed),
                    static_cast<uint32_t>(master_seed >> 32),
                    static_cast<uint32_t>(stream_index),
                    static_cast<uint32_t>(stream_index >> 32)};
  uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<uint64_t>(words[0]) << 32) | words[1];
}

SeededNoiseSource::SeededNoiseSource(uint64_t seed) : engine_(seed) {}

double SeededNoiseSource::Uniform() {
  // (k + 0.5) / 2^53 for k in [0, 2^53) never hits 0 or 1.
  const uint64_t k = engine_() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1p-53;
}

double SeededNoiseSource::Laplace(double scale) {
  const double u = Uniform();
  if (u < 0.5) {
    return scale * std::log(2.0 * u);
  }
  return -scale * std::log(2.0 * (1.0 - u));
}

double ScriptedNoiseSource::Laplace(double) {
  if (draws_ >= script_.size()) {
    ++draws_;
    return 0.0;
  }
  return script_[draws_++];
}

double RecordingNoiseSource::Laplace(double scale) {
  const double value = inner_.Laplace(scale);
  log_.push_back({scale, value});
  return value;
}

}  // namespace dpsc
