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

#ifndef DPSC_TESTS_TESTING_ORACLES_H_
#define DPSC_TESTS_TESTING_ORACLES_H_

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dpsc/aggregator.h"
#include "dpsc/histogram_table.h"
#include "dpsc/serialization.h"

namespace dpsc::testing {

// tau for the shifted Laplace mechanism, straight from the closed forms.
inline double SimpleTauOracle(double eps, double delta, double sens) {
  return sens / eps * std::log((1 + std::exp(eps)) / (2 * delta));
}
inline double BespokeTauOracle(double eps, double delta, double sens) {
  return sens + sens / eps * std::log(1 / (2 * delta));
}

// Pr[X <= x] for X ~ Laplace(0, b).
inline double LaplaceCdf(double x, double b) {
  return x < 0 ? 0.5 * std::exp(x / b) : 1 - 0.5 * std::exp(-x / b);
}

// Single pass GROUP BY SUM over every row of every contribution.
inline HistogramTable NaiveGroupBySum(std::span<const Contribution> input,
                                      const ColumnSchema& schema) {
  std::map<GroupKey, SumValues> sums;
  for (const Contribution& c : input) {
    for (const ContributionRow& row : c.rows) {
      auto [it, inserted] = sums.try_emplace(row.key, schema.ZeroValues());
      for (size_t i = 0; i < row.values.size(); ++i) {
        if (auto* v = std::get_if<int64_t>(&it->second[i])) {
          *v += std::get<int64_t>(row.values[i]);
        } else {
          std::get<double>(it->second[i]) += std::get<double>(row.values[i]);
        }
      }
    }
  }
  HistogramTable table(schema);
  for (auto& [key, values] : sums) (void)table.Insert(key, values);
  return table;
}

// Histogram of a dataset in which contribution i adds value 1 to every group
// in rows[i].
inline HistogramTable CountTable(const ColumnSchema& schema,
                                 const std::vector<std::vector<GroupKey>>& rows) {
  HistogramTable table(schema);
  for (const auto& keys : rows) {
    for (const GroupKey& key : keys) {
      SumValues one = schema.ZeroValues();
      for (SumValue& v : one) {
        if (auto* i = std::get_if<int64_t>(&v)) *i = 1; else v = 1.0;
      }
      (void)table.Accumulate(key, one);
    }
  }
  return table;
}

inline int64_t SerializedLength(const HistogramTable& table) {
  return static_cast<int64_t>(SerializeHistogram(table).size());
}

}  // namespace dpsc::testing

#endif  // DPSC_TESTS_TESTING_ORACLES_H_
