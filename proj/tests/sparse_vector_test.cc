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

#include "dpsc/sparse_vector.h"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "dpsc/noise_source.h"
#include "dpsc/privacy_params.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace dpsc {
namespace {

using ::testing::ElementsAre;

constexpr SvtAnswer kB = SvtAnswer::kBelow;
constexpr SvtAnswer kA = SvtAnswer::kAbove;

QueryStream Uds(const std::vector<double>& v) { return QueryStream{v, true}; }

TEST(UdsAboveThresholdTest, HaltsAtFirstNoisyCrossing) {
  const std::vector<double> values = {1, 2, 3, 4};
  ScriptedNoiseSource noise({0.0, 0.0, 0.0, 0.5});
  auto out = UdsAboveThreshold(Uds(values), 3.4, 1.0, noise);
  ASSERT_TRUE(out.ok());
  EXPECT_THAT(*out, ElementsAre(kB, kB, kA));
  EXPECT_EQ(HaltIndex(*out), 2u);
}

TEST(UdsAboveThresholdTest, NoCrossingAnswersAllBelow) {
  const std::vector<double> values = {0, 0, 0};
  ZeroNoiseSource zero;
  auto out = UdsAboveThreshold(Uds(values), 1.0, 1.0, zero);
  ASSERT_TRUE(out.ok());
  EXPECT_THAT(*out, ElementsAre(kB, kB, kB));
  EXPECT_FALSE(HaltIndex(*out).has_value());
}

TEST(UdsAboveThresholdTest, RequiresUnidirectionalAssertion) {
  const std::vector<double> values = {0};
  ZeroNoiseSource zero;
  EXPECT_EQ(UdsAboveThreshold(QueryStream{values, false}, 0, 1, zero).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(StrictUdsAboveThreshold(QueryStream{values, false}, 0,
                                    *PrivacyBudget::Create(1, 1e-4), zero)
                .status()
                .code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(UdsAboveThresholdTest, RejectsNonFiniteQueries) {
  const std::vector<double> values = {0, NAN};
  ZeroNoiseSource zero;
  EXPECT_FALSE(UdsAboveThreshold(Uds(values), 0, 1, zero).ok());
  EXPECT_FALSE(UdsAboveThreshold(Uds({0}), 0, 0, zero).ok());
}

TEST(NoiseScaleTest, TextbookUsesTwoAndFourOverEpsilon) {
  const std::vector<double> values = {0, 0, 0};
  ZeroNoiseSource zero;
  RecordingNoiseSource noise(zero);
  ASSERT_TRUE(AboveThresholdTextbook(QueryStream{values, false}, 10, 0.5, noise).ok());
  ASSERT_EQ(noise.log().size(), 4u);
  EXPECT_DOUBLE_EQ(noise.log()[0].scale, 4.0);
  for (int i = 1; i < 4; ++i) EXPECT_DOUBLE_EQ(noise.log()[i].scale, 8.0);
}

TEST(NoiseScaleTest, UdsUsesTwoOverEpsilonForBoth) {
  const std::vector<double> values = {0, 0, 0};
  ZeroNoiseSource zero;
  RecordingNoiseSource noise(zero);
  ASSERT_TRUE(UdsAboveThreshold(Uds(values), 10, 0.5, noise).ok());
  ASSERT_EQ(noise.log().size(), 4u);
  for (const auto& draw : noise.log()) EXPECT_DOUBLE_EQ(draw.scale, 4.0);
}

TEST(StrictThresholdShiftTest, ClosedForm) {
  const PrivacyBudget budget = *PrivacyBudget::Create(1.0, 1e-4);
  const double q = StrictThresholdShift(budget, 2.0);
  EXPECT_NEAR(q, 2.0 * (std::log(1 + std::exp(1.0)) - std::log(1e-4)), 1e-12);
  EXPECT_NEAR(q, 21.0472, 1e-4);
  // q is the 1 - delta / (2 (1 + e^eps)) quantile.
  const double tail = 0.5 * std::exp(-q / 2.0);
  EXPECT_NEAR(tail, 1e-4 / (2 * (1 + std::exp(1.0))), 1e-18);
}

TEST(StrictUdsAboveThresholdTest, LowersThresholdByTwoQ) {
  const PrivacyBudget budget = *PrivacyBudget::Create(1.0, 1e-4);
  const double q = StrictThresholdShift(budget, 2.0);
  // Query 0 sits just below T - 2q, query 1 just above it.
  const std::vector<double> values = {50 - 2 * q - 0.01, 50 - 2 * q + 0.01};
  ZeroNoiseSource zero;
  auto out = StrictUdsAboveThreshold(Uds(values), 50, budget, zero);
  ASSERT_TRUE(out.ok());
  EXPECT_THAT(*out, ElementsAre(kB, kA));
}

TEST(StrictUdsAboveThresholdTest, HardStopIgnoresNoise) {
  const PrivacyBudget budget = *PrivacyBudget::Create(1.0, 1e-4);
  const std::vector<double> values = {0, 5, 10, 11};
  // Noise pushes everything far down, but f = 10 reaches T = 10.
  ScriptedNoiseSource noise({1e6, -1e6, -1e6, -1e6, -1e6});
  auto out = StrictUdsAboveThreshold(Uds(values), 10, budget, noise);
  ASSERT_TRUE(out.ok());
  EXPECT_THAT(*out, ElementsAre(kB, kB, kA));
}

TEST(StrictUdsAboveThresholdTest, FuzzedStreamsNeverContinuePastThreshold) {
  std::mt19937_64 rng(17);
  SeededNoiseSource noise(18);
  for (int trial = 0; trial < 2000; ++trial) {
    const double eps = 0.1 + (rng() % 1000) / 250.0;
    const PrivacyBudget budget = *PrivacyBudget::Create(eps, 1e-6);
    const double threshold = static_cast<double>(rng() % 200) - 100;
    std::vector<double> values;
    double f = threshold - static_cast<double>(rng() % 50);
    for (int i = 0; i < 60; ++i) {
      values.push_back(f);
      f += static_cast<double>(rng() % 3);
    }
    auto out = StrictUdsAboveThreshold(Uds(values), threshold, budget, noise);
    ASSERT_TRUE(out.ok());
    for (size_t i = 0; i < out->size(); ++i) {
      if (values[i] >= threshold) {
        ASSERT_EQ((*out)[i], kA);
        ASSERT_EQ(out->size(), i + 1);
      }
    }
  }
}

}  // namespace
}  // namespace dpsc
