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

#include <string>

#include "dpsc/dp_map.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace dpsc {
namespace {

TEST(ObservationTraceTest, RecordsInOrder) {
  ObservationTrace trace;
  ASSERT_TRUE(trace.AppendResize(0, {3, 4, 8}).ok());
  ASSERT_TRUE(trace.AppendMessageLength(0, 120).ok());
  ASSERT_TRUE(trace.AppendMessageLength(1, 80).ok());
  EXPECT_EQ(trace.observations().size(), 3u);
  EXPECT_EQ(trace.TotalMessageBytes(), 200);
  ASSERT_EQ(trace.Resizes(0).size(), 1u);
  EXPECT_TRUE(trace.Resizes(1).empty());
  EXPECT_EQ(trace.MessageLengths()[1].leaf_id, 1);
}

TEST(ObservationTraceTest, RejectsNonPositiveLengths) {
  ObservationTrace trace;
  EXPECT_FALSE(trace.AppendMessageLength(0, 0).ok());
  EXPECT_FALSE(trace.AppendMessageLength(0, -3).ok());
  EXPECT_TRUE(trace.observations().empty());
}

TEST(ObservationTraceTest, CapacitiesIncreasePerLeaf) {
  ObservationTrace trace;
  EXPECT_FALSE(trace.AppendResize(0, {1, 8, 8}).ok());
  ASSERT_TRUE(trace.AppendResize(0, {1, 8, 16}).ok());
  EXPECT_FALSE(trace.AppendResize(0, {5, 4, 8}).ok());
  // Other leaves keep their own history.
  EXPECT_TRUE(trace.AppendResize(1, {5, 4, 8}).ok());
}

TEST(ObservationTraceTest, JsonLines) {
  ObservationTrace trace;
  ASSERT_TRUE(trace.AppendResize(2, {3, 4, 8}).ok());
  ASSERT_TRUE(trace.AppendMessageLength(2, 57).ok());
  EXPECT_EQ(trace.ToJsonLines(),
            "{\"type\":\"resize\",\"leaf\":2,\"write_index\":3,"
            "\"old_capacity\":4,\"new_capacity\":8}\n"
            "{\"type\":\"message\",\"leaf\":2,\"bytes\":57}\n");
}

}  // namespace
}  // namespace dpsc
