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

#include "dpsc/padding.h"

#include <cmath>
#include <cstdint>
#include <string>

#include "dpsc/noise_source.h"
#include "dpsc/positive_laplace.h"
#include "dpsc/serialization.h"
#include "dpsc/status.h"
#include "dpsc/varint.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace dpsc {
namespace {

ColumnSchema Schema() {
  return *ColumnSchema::Create(
      {ColumnSpec::GroupString("app", 15), ColumnSpec::SumInt64("n")});
}

PrivacyBudget Budget() { return *PrivacyBudget::Create(1.0, 1e-4); }

TEST(PaddedLengthSensitivityTest, AddsHeaderGrowth) {
  const int64_t s = CalculateSerializeSensitivity(Schema(), 1);
  EXPECT_EQ(PaddedLengthSensitivity(Schema(), 1), s + VarintWidthGrowth(s));
}

TEST(PadSerializeTest, ZeroNoiseAddsCeilTau) {
  HistogramTable table(Schema());
  ASSERT_TRUE(table.Insert({std::string("ab")}, {int64_t{7}}).ok());
  ZeroNoiseSource zero;
  auto padded = PadSerialize(table, Budget(), 1, TauMode::kBespoke, zero);
  ASSERT_TRUE(padded.ok());
  const std::string raw = SerializeHistogram(table);
  const double tau = ComputeTau(
      *PrivacyParams::Create(Budget(),
                             static_cast<double>(PaddedLengthSensitivity(Schema(), 1))),
      TauMode::kBespoke);
  const size_t expected =
      static_cast<size_t>(std::ceil(1 + raw.size() + tau));
  EXPECT_EQ(padded->size(), expected);
  EXPECT_EQ(padded->payload(), raw);
  EXPECT_EQ(padded->header_size(), 1u);
  EXPECT_EQ(padded->padding_size(), expected - 1 - raw.size());
}

TEST(PadSerializeTest, NeverShorterThanUnpadded) {
  HistogramTable table(Schema());
  ASSERT_TRUE(table.Insert({std::string("ab")}, {int64_t{7}}).ok());
  ScriptedNoiseSource noise({-1e6});
  auto padded = PadSerialize(table, Budget(), 1, TauMode::kBespoke, noise);
  ASSERT_TRUE(padded.ok());
  EXPECT_EQ(padded->size(), PaddedPayload::Unpadded(SerializeHistogram(table)).size());
  EXPECT_EQ(padded->padding_size(), 0u);
}

TEST(PadSerializeTest, RoundTripsThroughParse) {
  HistogramTable table(Schema());
  ASSERT_TRUE(table.Insert({std::string("xyz")}, {int64_t{-4}}).ok());
  SeededNoiseSource noise(5);
  for (int i = 0; i < 50; ++i) {
    auto padded = PadSerialize(table, Budget(), 3, TauMode::kSimple, noise);
    ASSERT_TRUE(padded.ok());
    auto decoded = DeserializePadded(Schema(), padded->bytes());
    ASSERT_TRUE(decoded.ok()) << decoded.status();
    EXPECT_EQ(*decoded, table);
  }
}

TEST(PadSerializeTest, RejectsBadMaxGroups) {
  HistogramTable table(Schema());
  ZeroNoiseSource zero;
  EXPECT_EQ(PadSerialize(table, Budget(), 0, TauMode::kBespoke, zero).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(PaddedPayloadTest, ParseRejectsBadLayouts) {
  // Header claims 5 bytes, only 2 follow.
  EXPECT_TRUE(HasErrorName(PaddedPayload::Parse(std::string("\x05\x01\x00", 3)).status(),
                           "MalformedPayload"));
  // Non-zero padding.
  EXPECT_TRUE(HasErrorName(
      PaddedPayload::Parse(std::string("\x01\x00\x07", 3)).status(),
      "MalformedPayload"));
  EXPECT_TRUE(HasErrorName(PaddedPayload::Parse(std::string("\x80", 1)).status(),
                           "MalformedPayload"));
  auto ok = PaddedPayload::Parse(std::string("\x01\x00\x00\x00", 4));
  ASSERT_TRUE(ok.ok());
  EXPECT_EQ(ok->payload(), std::string(1, '\0'));
  EXPECT_EQ(ok->padding_size(), 2u);
}

TEST(PaddedPayloadTest, UnpaddedHasHeaderOnly) {
  const PaddedPayload p = PaddedPayload::Unpadded("abc");
  EXPECT_EQ(p.bytes(), std::string("\x03" "abc"));
  EXPECT_EQ(p.padding_size(), 0u);
}

}  // namespace
}  // namespace dpsc
