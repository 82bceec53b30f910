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

#include "dpsc/records_io.h"

#include <string>

#include "dpsc/status.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace dpsc {
namespace {

using ::testing::HasSubstr;

constexpr char kRecords[] = R"(# toy query
client_id,app:group_string:15,os:group_string:8,clicks:sum_double
alice, Reddit ,android,1.5
bob,X,iOS,2

alice,X,iOS,0.25
)";

TEST(ParseRecordsCsvTest, GroupsRowsByClient) {
  auto records = ParseRecordsCsv(kRecords);
  ASSERT_TRUE(records.ok()) << records.status();
  EXPECT_EQ(records->schema.columns().size(), 3u);
  ASSERT_EQ(records->contributions.size(), 2u);
  EXPECT_EQ(records->contributions[0].client_id, "alice");
  ASSERT_EQ(records->contributions[0].rows.size(), 2u);
  EXPECT_EQ(std::get<std::string>(records->contributions[0].rows[0].key[0]),
            "Reddit");
  EXPECT_EQ(std::get<double>(records->contributions[0].rows[1].values[0]), 0.25);
  EXPECT_EQ(records->contributions[1].client_id, "bob");
}

TEST(ParseRecordsCsvTest, HeaderOnlyIsEmpty) {
  auto records = ParseRecordsCsv("client_id,k:group_int64,n:sum_int64\n");
  ASSERT_TRUE(records.ok());
  EXPECT_TRUE(records->contributions.empty());
}

TEST(ParseRecordsCsvTest, ErrorsCarryLineNumbers) {
  auto bad_field = ParseRecordsCsv(
      "client_id,k:group_int64,n:sum_int64\n# c\na,1,2\nb,x,2\n");
  ASSERT_FALSE(bad_field.ok());
  EXPECT_THAT(bad_field.status().message(), HasSubstr("line 4"));
  EXPECT_THAT(bad_field.status().message(), HasSubstr("column 'k'"));

  auto short_row = ParseRecordsCsv("client_id,k:group_int64,n:sum_int64\na,1\n");
  EXPECT_THAT(short_row.status().message(), HasSubstr("line 2"));

  auto long_string = ParseRecordsCsv(
      "client_id,k:group_string:2,n:sum_int64\na,abc,1\n");
  EXPECT_THAT(long_string.status().message(), HasSubstr("SchemaViolation"));
  EXPECT_THAT(long_string.status().message(), HasSubstr("line 2"));
}

TEST(ParseRecordsCsvTest, RejectsBadHeaders) {
  EXPECT_FALSE(ParseRecordsCsv("").ok());
  EXPECT_FALSE(ParseRecordsCsv("id,k:group_int64,n:sum_int64\n").ok());
  EXPECT_FALSE(ParseRecordsCsv("client_id,k:group_string,n:sum_int64\n").ok());
  EXPECT_FALSE(ParseRecordsCsv("client_id,k:group_int64:3,n:sum_int64\n").ok());
  EXPECT_FALSE(ParseRecordsCsv("client_id,k:blob,n:sum_int64\n").ok());
  EXPECT_FALSE(ParseRecordsCsv("client_id,k:group_int64,k:sum_int64\n").ok());
  EXPECT_FALSE(ParseRecordsCsv("client_id,n:sum_int64\n").ok());
}

TEST(ParseSchemaSpecTest, ParsesColumns) {
  auto schema = ParseSchemaSpec("app:group_string:15,n:sum_int64");
  ASSERT_TRUE(schema.ok());
  EXPECT_EQ(schema->columns()[0], ColumnSpec::GroupString("app", 15));
  EXPECT_EQ(schema->columns()[1], ColumnSpec::SumInt64("n"));
}

TEST(ParseConfigTest, ParsesAllKeys) {
  const ColumnSchema schema =
      *ParseSchemaSpec("app:group_string:15,clicks:sum_double,n:sum_int64");
  auto config = ParseConfig(R"(
# stage budgets
max_groups = 3
epsilon = 2
epsilon_release = 0.75
delta = 1e-6
num_leaves = 4
tau_mode = simple
pad_messages = false
private_resize = true
noiseless = 0
initial_capacity = 16
seed = 99
bounds.clicks = 0, 5.5
bounds.n = -1,1
)",
                            schema);
  ASSERT_TRUE(config.ok()) << config.status();
  EXPECT_EQ(config->max_groups, 3);
  EXPECT_DOUBLE_EQ(config->epsilon_pad, 0.5);
  EXPECT_DOUBLE_EQ(config->epsilon_release, 0.75);
  EXPECT_DOUBLE_EQ(config->delta, 1e-6);
  EXPECT_EQ(config->num_leaves, 4);
  EXPECT_EQ(config->tau_mode, TauMode::kSimple);
  EXPECT_FALSE(config->pad_messages);
  EXPECT_TRUE(config->private_resize);
  EXPECT_FALSE(config->noiseless);
  EXPECT_EQ(config->initial_capacity, 16);
  EXPECT_EQ(config->seed, 99u);
  ASSERT_EQ(config->value_bounds.size(), 2u);
  EXPECT_DOUBLE_EQ(config->value_bounds[0].hi, 5.5);
  EXPECT_DOUBLE_EQ(config->value_bounds[1].lo, -1);
}

TEST(ParseConfigTest, StageEpsilonOverridesTotalInAnyOrder) {
  const ColumnSchema schema = *ParseSchemaSpec("k:group_int64,n:sum_int64");
  auto config =
      ParseConfig("epsilon_pad=0.1\nepsilon=4\nbounds.n=0,1\n", schema);
  ASSERT_TRUE(config.ok());
  EXPECT_DOUBLE_EQ(config->epsilon_pad, 0.1);
  EXPECT_DOUBLE_EQ(config->epsilon_resize, 1.0);
  EXPECT_DOUBLE_EQ(config->epsilon_release, 2.0);
}

TEST(ParseConfigTest, Errors) {
  const ColumnSchema schema = *ParseSchemaSpec("k:group_int64,n:sum_int64");
  EXPECT_THAT(ParseConfig("bounds.n=0,1\nfoo=1\n", schema).status().message(),
              HasSubstr("line 2"));
  EXPECT_THAT(ParseConfig("max_groups=2\n", schema).status().message(),
              HasSubstr("missing bounds.n"));
  EXPECT_FALSE(ParseConfig("bounds.n=0,1\nbounds.m=0,1\n", schema).ok());
  EXPECT_FALSE(ParseConfig("bounds.n=0,1\nmax_groups=2\nmax_groups=3\n", schema).ok());
  EXPECT_FALSE(ParseConfig("bounds.n=0,1\ndelta=2\n", schema).ok());
  EXPECT_FALSE(ParseConfig("bounds.n=0\n", schema).ok());
  EXPECT_FALSE(ParseConfig("bounds.n=0,1\nmax_groups\n", schema).ok());
  EXPECT_FALSE(ParseConfig("bounds.n=0,1\ntau_mode=fancy\n", schema).ok());
}

TEST(FormatTest, TableCsvAndDoubles) {
  const ColumnSchema schema =
      *ParseSchemaSpec("app:group_string:15,n:sum_int64,day:group_int64,x:sum_double");
  HistogramTable table(schema);
  ASSERT_TRUE(table.Insert({std::string("b"), int64_t{2}}, {int64_t{3}, 0.1}).ok());
  ASSERT_TRUE(table.Insert({std::string("a"), int64_t{9}}, {int64_t{-1}, 2.0}).ok());
  EXPECT_EQ(FormatTableCsv(table), "app,n,day,x\na,-1,9,2\nb,3,2,0.1\n");
  EXPECT_EQ(FormatDouble(1e-4), "1e-04");
  EXPECT_EQ(FormatDouble(0.30000000000000004), "0.30000000000000004");
}

}  // namespace
}  // namespace dpsc
