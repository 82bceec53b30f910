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

#include "dpsc/histogram_table.h"

#include <cstdint>
#include <string>

#include "dpsc/status.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace dpsc {
namespace {

ColumnSchema AppOsSchema() {
  return *ColumnSchema::Create(
      {ColumnSpec::GroupString("app", 15), ColumnSpec::SumInt64("count"),
       ColumnSpec::GroupInt64("day"), ColumnSpec::SumDouble("minutes")});
}

TEST(ColumnSchemaTest, SplitsGroupAndSumColumns) {
  const ColumnSchema schema = AppOsSchema();
  EXPECT_THAT(schema.group_columns(), ::testing::ElementsAre(0, 2));
  EXPECT_THAT(schema.sum_columns(), ::testing::ElementsAre(1, 3));
  EXPECT_EQ(schema.group_column(1).name, "day");
  EXPECT_EQ(schema.sum_column(1).name, "minutes");
}

TEST(ColumnSchemaTest, RequiresGroupAndSum) {
  EXPECT_TRUE(HasErrorName(
      ColumnSchema::Create({ColumnSpec::SumInt64("n")}).status(),
      "SchemaViolation"));
  EXPECT_TRUE(HasErrorName(
      ColumnSchema::Create({ColumnSpec::GroupInt64("k")}).status(),
      "SchemaViolation"));
  EXPECT_TRUE(HasErrorName(ColumnSchema::Create({ColumnSpec::GroupString("k", 0),
                                                 ColumnSpec::SumInt64("n")})
                               .status(),
                           "SchemaViolation"));
}

TEST(ColumnSchemaTest, ValidatesKeysAndValues) {
  const ColumnSchema schema = AppOsSchema();
  EXPECT_TRUE(schema.ValidateKey({std::string("Reddit"), int64_t{3}}).ok());
  EXPECT_FALSE(schema.ValidateKey({std::string("Reddit")}).ok());
  EXPECT_FALSE(schema.ValidateKey({int64_t{3}, std::string("Reddit")}).ok());
  EXPECT_TRUE(HasErrorName(
      schema.ValidateKey({std::string(16, 'x'), int64_t{3}}), "SchemaViolation"));
  EXPECT_TRUE(schema.ValidateValues({int64_t{1}, 2.5}).ok());
  EXPECT_FALSE(schema.ValidateValues({2.5, int64_t{1}}).ok());
}

TEST(HistogramTableTest, InsertRejectsDuplicates) {
  HistogramTable table(AppOsSchema());
  ASSERT_TRUE(table.Insert({std::string("a"), int64_t{1}}, {int64_t{1}, 1.0}).ok());
  EXPECT_TRUE(HasErrorName(
      table.Insert({std::string("a"), int64_t{1}}, {int64_t{1}, 1.0}),
      "SchemaViolation"));
  EXPECT_EQ(table.size(), 1u);
}

TEST(HistogramTableTest, AccumulateAddsCellwise) {
  HistogramTable table(AppOsSchema());
  const GroupKey key = {std::string("a"), int64_t{1}};
  ASSERT_TRUE(table.Accumulate(key, {int64_t{2}, 0.5}).ok());
  ASSERT_TRUE(table.Accumulate(key, {int64_t{3}, 0.25}).ok());
  const SumValues* v = table.Find(key);
  ASSERT_NE(v, nullptr);
  EXPECT_EQ(std::get<int64_t>((*v)[0]), 5);
  EXPECT_EQ(std::get<double>((*v)[1]), 0.75);
  EXPECT_EQ(table.Find({std::string("b"), int64_t{1}}), nullptr);
}

TEST(HistogramTableTest, RowsAreInKeyOrder) {
  HistogramTable table(AppOsSchema());
  for (const char* app : {"c", "a", "b"}) {
    ASSERT_TRUE(table.Insert({std::string(app), int64_t{0}}, {int64_t{1}, 1.0}).ok());
  }
  std::string order;
  for (const auto& [key, values] : table.rows()) order += std::get<std::string>(key[0]);
  EXPECT_EQ(order, "abc");
}

}  // namespace
}  // namespace dpsc
