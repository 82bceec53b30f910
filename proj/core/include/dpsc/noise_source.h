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

#ifndef DPSC_NOISE_SOURCE_H_
#define DPSC_NOISE_SOURCE_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace dpsc {

// A stream of zero-mean Laplace draws. Mechanisms take their randomness
// exclusively through this interface so that tests can substitute
// deterministic sources.
//
// Instances are single-owner mutable state: they may be moved between threads
// but not shared without external synchronization.
class NoiseSource {
 public:
  virtual ~NoiseSource() = default;

  // Returns a draw from Laplace(0, scale). `scale` must be positive.
  virtual double Laplace(double scale) = 0;
};

// Mixes a master seed with a stream index into an independent 64-bit seed.
// Used wherever a component needs one reproducible source per leaf, per trial
// or per role.
uint64_t DeriveSeed(uint64_t master_seed, uint64_t stream_index);

// Pseudorandom Laplace draws by inverse CDF on a 64-bit Mersenne Twister.
//
// Each draw consumes exactly one 64-bit output; the top 53 bits give a uniform
// u in the open interval (0, 1) and the draw is
//   scale * ln(2u)        for u < 1/2
//   -scale * ln(2(1-u))   otherwise.
// The sequence is fully determined by the seed.
class SeededNoiseSource final : public NoiseSource {
 public:
  explicit SeededNoiseSource(uint64_t seed);

  double Laplace(double scale) override;

  // Uniform draw in (0, 1) from the same engine.
  double Uniform();

 private:
  std::mt19937_64 engine_;
};

// Every draw is exactly 0.
class ZeroNoiseSource final : public NoiseSource {
 public:
  double Laplace(double) override { return 0.0; }
};

// Returns the scripted values in order, ignoring the requested scale. Once the
// script is exhausted every further draw is 0.
class ScriptedNoiseSource final : public NoiseSource {
 public:
  explicit ScriptedNoiseSource(std::vector<double> script)
      : script_(std::move(script)) {}

  double Laplace(double scale) override;

  size_t draws() const { return draws_; }
  bool exhausted() const { return draws_ >= script_.size(); }

 private:
  std::vector<double> script_;
  size_t draws_ = 0;
};

// Forwards to another source and records every (scale, value) pair.
class RecordingNoiseSource final : public NoiseSource {
 public:
  struct Draw {
    double scale;
    double value;
  };

  explicit RecordingNoiseSource(NoiseSource& inner) : inner_(inner) {}

  double Laplace(double scale) override;

  const std::vector<Draw>& log() const { return log_; }
  void clear() { log_.clear(); }

 private:
  NoiseSource& inner_;
  std::vector<Draw> log_;
};

// Forwards to another source with every requested scale multiplied by a
// constant factor. A factor below 1 under-noises the wrapped mechanism; the
// audit tooling uses it to plant known privacy violations.
class ScaledNoiseSource final : public NoiseSource {
 public:
  ScaledNoiseSource(NoiseSource& inner, double factor)
      : inner_(inner), factor_(factor) {}

  double Laplace(double scale) override {
    return inner_.Laplace(scale * factor_);
  }

 private:
  NoiseSource& inner_;
  double factor_;
};

}  // namespace dpsc

#endif  // DPSC_NOISE_SOURCE_H_
