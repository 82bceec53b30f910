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

#include "dpsc/attacks.h"

#include <cmath>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace dpsc {
namespace {

TEST(DistinguisherBoundTest, ClosedForm) {
  EXPECT_NEAR(DistinguisherBound(1.0, 1e-4),
              (std::exp(1.0) - 1) / (std::exp(1.0) + 1) + 1e-4, 1e-15);
  EXPECT_NEAR(DistinguisherBound(1.0, 1e-4), 0.46222, 1e-5);
}

TEST(ThresholdDistinguisherTest, SeparatedSamples) {
  const std::vector<double> d = {1, 1, 1, 1};
  const std::vector<double> d_prime = {2, 2, 2, 2};
  const AttackResult r = ThresholdDistinguisher(d, d_prime);
  EXPECT_EQ(r.advantage, 1.0);
  EXPECT_TRUE(r.above_means_d_prime);
  EXPECT_EQ(r.threshold, 1.0);
}

TEST(ThresholdDistinguisherTest, MirroredRule) {
  const std::vector<double> d = {5, 6, 5, 6};
  const std::vector<double> d_prime = {1, 2, 1, 2};
  const AttackResult r = ThresholdDistinguisher(d, d_prime);
  EXPECT_EQ(r.advantage, 1.0);
  EXPECT_FALSE(r.above_means_d_prime);
}

TEST(PairsTest, BuiltInPairsAreNeighbors) {
  EXPECT_TRUE(ValidatePair(SybilLengthPair()).ok());
  EXPECT_TRUE(ValidatePair(SybilAllocationPair()).ok());
  EXPECT_TRUE(ValidatePair(IdenticalPair(SybilLengthPair())).ok());
  NeighborPair broken = SybilLengthPair();
  broken.d_prime[0].rows[0].values[0] = 0.5;
  EXPECT_FALSE(ValidatePair(broken).ok());
  broken = SybilLengthPair();
  broken.d_prime.pop_back();
  EXPECT_FALSE(ValidatePair(broken).ok());
}

TEST(AllocationPairTest, TargetSitsAtTheResizeCliff) {
  const NeighborPair pair = SybilAllocationPair(64, 32);
  EXPECT_EQ(pair.target_index, 63u);
  EXPECT_EQ(pair.d.size(), 96u);
}

TEST(MessageLengthAttackTest, UnmitigatedIsPerfect) {
  AttackOptions options;
  options.trials = 200;
  auto r = MessageLengthAttack(SybilLengthPair(), options);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->advantage, 1.0);
  EXPECT_EQ(r->bound, 1.0);
}

TEST(MessageLengthAttackTest, IdenticalPairHasNoAdvantage) {
  AttackOptions options;
  options.trials = 400;
  options.mitigated = true;
  auto r = MessageLengthAttack(IdenticalPair(SybilLengthPair()), options);
  ASSERT_TRUE(r.ok());
  EXPECT_LT(r->advantage, 0.2);
}

TEST(MessageLengthAttackTest, MitigatedStaysUnderBound) {
  AttackOptions options;
  options.trials = 600;
  options.mitigated = true;
  auto r = MessageLengthAttack(SybilLengthPair(), options);
  ASSERT_TRUE(r.ok());
  EXPECT_LE(r->advantage, r->bound + 0.05);
}

TEST(AllocationAttackTest, UnmitigatedIsPerfect) {
  AttackOptions options;
  options.trials = 100;
  auto r = AllocationAttack(SybilAllocationPair(), options);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->advantage, 1.0);
}

TEST(AllocationAttackTest, MitigatedStaysUnderBound) {
  AttackOptions options;
  options.trials = 400;
  options.mitigated = true;
  auto r = AllocationAttack(SybilAllocationPair(), options);
  ASSERT_TRUE(r.ok());
  EXPECT_LE(r->advantage, r->bound + 0.05);
}

TEST(AllocationAttackTest, IdenticalPairHasNoAdvantage) {
  AttackOptions options;
  options.trials = 200;
  auto r = AllocationAttack(IdenticalPair(SybilAllocationPair()), options);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->advantage, 0.0);
}

TEST(AttackTest, RejectsBadOptions) {
  AttackOptions options;
  options.trials = 1;
  EXPECT_FALSE(MessageLengthAttack(SybilLengthPair(), options).ok());
  options.trials = 10;
  options.mitigated = true;
  options.epsilon = -1;
  EXPECT_FALSE(AllocationAttack(SybilAllocationPair(), options).ok());
}

}  // namespace
}  // namespace dpsc
