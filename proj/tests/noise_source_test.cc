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
#include <set>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "testing/oracles.h"

namespace dpsc {
namespace {

using ::testing::DoubleNear;
using ::testing::ElementsAre;

TEST(SeededNoiseSourceTest, SameSeedSameSequence) {
  SeededNoiseSource a(42);
  SeededNoiseSource b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.Laplace(1.5), b.Laplace(1.5));
}

TEST(SeededNoiseSourceTest, DifferentSeedsDiffer) {
  SeededNoiseSource a(1);
  SeededNoiseSource b(2);
  int equal = 0;
  for (int i = 0; i < 100; ++i) equal += a.Laplace(1) == b.Laplace(1);
  EXPECT_LT(equal, 3);
}

TEST(SeededNoiseSourceTest, UniformStaysInOpenInterval) {
  SeededNoiseSource noise(7);
  for (int i = 0; i < 100000; ++i) {
    const double u = noise.Uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(SeededNoiseSourceTest, MomentsMatchLaplace) {
  SeededNoiseSource noise(123);
  constexpr int kDraws = 400000;
  constexpr double kScale = 3.0;
  double sum = 0;
  double sum_sq = 0;
  int below = 0;
  for (int i = 0; i < kDraws; ++i) {
    const double x = noise.Laplace(kScale);
    sum += x;
    sum_sq += x * x;
    below += x <= -2.0;
  }
  const double mean = sum / kDraws;
  const double var = sum_sq / kDraws - mean * mean;
  EXPECT_NEAR(mean, 0.0, 0.03);
  EXPECT_NEAR(var / (2 * kScale * kScale), 1.0, 0.02);
  EXPECT_NEAR(static_cast<double>(below) / kDraws,
              testing::LaplaceCdf(-2.0, kScale), 0.003);
}

TEST(DeriveSeedTest, DeterministicAndSpread) {
  EXPECT_EQ(DeriveSeed(5, 9), DeriveSeed(5, 9));
  std::set<uint64_t> seeds;
  for (uint64_t m = 0; m < 20; ++m) {
    for (uint64_t i = 0; i < 50; ++i) seeds.insert(DeriveSeed(m, i));
  }
  EXPECT_EQ(seeds.size(), 1000u);
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(0, 1));
  EXPECT_NE(DeriveSeed(0, uint64_t{1} << 32), DeriveSeed(0, 0));
}

TEST(ZeroNoiseSourceTest, AlwaysZero) {
  ZeroNoiseSource noise;
  EXPECT_EQ(noise.Laplace(10), 0.0);
  EXPECT_EQ(noise.Laplace(0.1), 0.0);
}

TEST(ScriptedNoiseSourceTest, ReplaysThenZeros) {
  ScriptedNoiseSource noise({1.5, -2.0});
  EXPECT_FALSE(noise.exhausted());
  EXPECT_EQ(noise.Laplace(9), 1.5);
  EXPECT_EQ(noise.Laplace(9), -2.0);
  EXPECT_TRUE(noise.exhausted());
  EXPECT_EQ(noise.Laplace(9), 0.0);
  EXPECT_EQ(noise.draws(), 3u);
}

TEST(RecordingNoiseSourceTest, LogsScaleAndValue) {
  ScriptedNoiseSource inner({0.25, 0.5});
  RecordingNoiseSource noise(inner);
  noise.Laplace(2);
  noise.Laplace(4);
  ASSERT_EQ(noise.log().size(), 2u);
  EXPECT_EQ(noise.log()[0].scale, 2);
  EXPECT_EQ(noise.log()[0].value, 0.25);
  EXPECT_EQ(noise.log()[1].scale, 4);
  noise.clear();
  EXPECT_TRUE(noise.log().empty());
}

TEST(ScaledNoiseSourceTest, MultipliesRequestedScale) {
  ZeroNoiseSource zero;
  RecordingNoiseSource recorder(zero);
  ScaledNoiseSource scaled(recorder, 0.5);
  scaled.Laplace(4);
  ASSERT_EQ(recorder.log().size(), 1u);
  EXPECT_THAT(std::vector<double>{recorder.log()[0].scale},
              ElementsAre(DoubleNear(2.0, 1e-15)));
}

}  // namespace
}  // namespace dpsc
