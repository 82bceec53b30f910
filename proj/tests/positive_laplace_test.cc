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

#include "dpsc/positive_laplace.h"

#include <cmath>

#include "dpsc/noise_source.h"
#include "dpsc/privacy_params.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "testing/oracles.h"

namespace dpsc {
namespace {

PrivacyParams Params(double eps, double delta, double sens) {
  return *PrivacyParams::Create(eps, delta, sens);
}

TEST(LaplaceQuantileTest, MatchesClosedForm) {
  EXPECT_NEAR(*LaplaceQuantileAbs(0.01, 1.0), std::log(50.0), 1e-12);
  EXPECT_NEAR(*LaplaceQuantileAbs(1e-4, 2.0), 2 * std::log(5000.0), 1e-12);
}

TEST(LaplaceQuantileTest, QuantileHasRequestedMass) {
  const double q = *LaplaceQuantileAbs(0.003, 1.7);
  EXPECT_NEAR(testing::LaplaceCdf(-q, 1.7), 0.003, 1e-15);
}

TEST(LaplaceQuantileTest, RejectsBadDomain) {
  EXPECT_EQ(LaplaceQuantileAbs(0.5, 1).status().code(),
            absl::StatusCode::kOutOfRange);
  EXPECT_EQ(LaplaceQuantileAbs(0.0, 1).status().code(),
            absl::StatusCode::kOutOfRange);
  EXPECT_EQ(LaplaceQuantileAbs(0.1, 0).status().code(),
            absl::StatusCode::kOutOfRange);
  EXPECT_EQ(LaplaceQuantileAbs(0.1, -1).status().code(),
            absl::StatusCode::kOutOfRange);
}

TEST(ComputeTauTest, UnitSensitivityValues) {
  EXPECT_NEAR(ComputeTau(Params(1, 1e-4, 1), TauMode::kBespoke),
              9.517193191416238, 1e-12);
  EXPECT_NEAR(ComputeTau(Params(1, 1e-4, 1), TauMode::kSimple),
              9.83045487893446, 1e-12);
}

TEST(ComputeTauTest, MatchesOraclesAcrossGrid) {
  for (double eps : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    for (double delta : {1e-8, 1e-4, 0.01, 0.2}) {
      for (double sens : {1.0, 3.0, 117.0}) {
        const PrivacyParams p = Params(eps, delta, sens);
        EXPECT_NEAR(ComputeTau(p, TauMode::kSimple),
                    testing::SimpleTauOracle(eps, delta, sens),
                    1e-9 * sens / eps);
        EXPECT_NEAR(ComputeTau(p, TauMode::kBespoke),
                    testing::BespokeTauOracle(eps, delta, sens), 1e-9 * sens);
      }
    }
  }
}

TEST(ComputeTauTest, BespokeNeverLarger) {
  for (double eps : {0.01, 0.5, 1.0, 2.0, 20.0}) {
    for (double delta : {1e-10, 1e-4, 0.3}) {
      const PrivacyParams p = Params(eps, delta, 1);
      EXPECT_LE(ComputeTau(p, TauMode::kBespoke),
                ComputeTau(p, TauMode::kSimple));
    }
  }
}

TEST(ComputeTauTest, LargeEpsilonStaysFinite) {
  const double tau = ComputeTau(Params(800, 1e-4, 1), TauMode::kSimple);
  EXPECT_TRUE(std::isfinite(tau));
  EXPECT_NEAR(tau, (800 + std::log(0.5e4)) / 800, 1e-9);
}

TEST(PositiveLaplaceTest, ZeroNoiseAddsTau) {
  ZeroNoiseSource zero;
  const PrivacyParams p = Params(1, 1e-4, 1);
  EXPECT_NEAR(PositiveLaplace(5.0, p, TauMode::kBespoke, zero),
              5.0 + 9.517193191416238, 1e-12);
}

TEST(PositiveLaplaceTest, ClampsAtInput) {
  ScriptedNoiseSource noise({-1000.0});
  const PrivacyParams p = Params(1, 1e-4, 1);
  EXPECT_EQ(PositiveLaplace(5.0, p, TauMode::kBespoke, noise), 5.0);
}

TEST(PositiveLaplaceTest, NeverBelowInput) {
  SeededNoiseSource noise(99);
  const PositiveLaplaceMechanism mech(Params(0.3, 0.05, 4), TauMode::kBespoke);
  for (int i = 0; i < 20000; ++i) {
    const double v = i * 0.37 - 2000;
    ASSERT_GE(mech.Apply(v, noise), v);
  }
}

TEST(PositiveLaplaceTest, MechanismUsesSensitivityOverEpsilonScale) {
  ZeroNoiseSource zero;
  RecordingNoiseSource noise(zero);
  const PositiveLaplaceMechanism mech(Params(0.5, 1e-3, 3), TauMode::kSimple);
  mech.Apply(0, noise);
  ASSERT_EQ(noise.log().size(), 1u);
  EXPECT_DOUBLE_EQ(noise.log()[0].scale, 6.0);
  EXPECT_DOUBLE_EQ(mech.scale(), 6.0);
}

TEST(TauModeTest, DefaultIsBespoke) {
  EXPECT_EQ(kDefaultTauMode, TauMode::kBespoke);
  EXPECT_STREQ(TauModeName(TauMode::kSimple), "simple");
  EXPECT_STREQ(TauModeName(TauMode::kBespoke), "bespoke");
}

TEST(PrivacyParamsTest, RejectsInvalid) {
  EXPECT_FALSE(PrivacyParams::Create(0, 1e-4, 1).ok());
  EXPECT_FALSE(PrivacyParams::Create(-1, 1e-4, 1).ok());
  EXPECT_FALSE(PrivacyParams::Create(INFINITY, 1e-4, 1).ok());
  EXPECT_FALSE(PrivacyParams::Create(1, 0, 1).ok());
  EXPECT_FALSE(PrivacyParams::Create(1, 0.5, 1).ok());
  EXPECT_FALSE(PrivacyParams::Create(1, 1e-4, 0).ok());
  EXPECT_TRUE(PrivacyParams::Create(1, 1e-4, 1).ok());
}

}  // namespace
}  // namespace dpsc
