//
// Copyright 2026 The ldpgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef LDPGRAPH_TESTS_TEST_UTIL_H_
#define LDPGRAPH_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "ldpgraph/adjacency_matrix.h"
#include "ldpgraph/graph.h"
#include "ldpgraph/matrix.h"
#include "ldpgraph/random.h"

namespace ldpgraph {
namespace testing {

inline const absl::Status& GetStatus(const absl::Status& status) {
  return status;
}
template <typename T>
const absl::Status& GetStatus(const absl::StatusOr<T>& status_or) {
  return status_or.status();
}

MATCHER(IsOk, "is OK") { return GetStatus(arg).ok(); }

MATCHER_P(StatusIs, code, "has status code " + ::testing::PrintToString(code)) {
  const absl::Status& status = GetStatus(arg);
  *result_listener << "status is " << status;
  return status.code() == code;
}

MATCHER_P(IsOkAndHolds, matcher, "is OK and holds a matching value") {
  if (!arg.ok()) {
    *result_listener << "status is " << arg.status();
    return false;
  }
  return ::testing::ExplainMatchResult(matcher, *arg, result_listener);
}

#define ASSERT_OK(expr) ASSERT_THAT(expr, ::ldpgraph::testing::IsOk())
#define EXPECT_OK(expr) EXPECT_THAT(expr, ::ldpgraph::testing::IsOk())

inline BitMatrix RandomBitMatrix(int rows, int cols, double density,
                                 Rng& rng) {
  BitMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m.Set(i, j, rng.Bernoulli(density));
  }
  return m;
}

inline RowMatrix RandomMatrix(int rows, int cols, double lo, double hi,
                              Rng& rng) {
  RowMatrix m(rows, cols);
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    m.data()[k] = lo + (hi - lo) * rng.Uniform();
  }
  return m;
}

// Random directed graph with binary features and every class present.
inline Graph RandomGraph(int n, int dim, int classes, double density,
                         uint64_t seed) {
  Rng rng(seed);
  Graph g;
  g.name = "random";
  g.num_nodes = n;
  g.num_classes = classes;
  g.adjacency.assign(n, {});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && rng.Bernoulli(density)) g.adjacency[i].push_back(j);
    }
  }
  g.features = RowMatrix(n, dim);
  for (Eigen::Index k = 0; k < g.features.size(); ++k) {
    g.features.data()[k] = rng.Bernoulli(0.3) ? 1.0 : 0.0;
  }
  for (int i = 0; i < n; ++i) g.labels.push_back(i % classes);
  g.feature_range = {0.0, 1.0};
  return g;
}

}  // namespace testing
}  // namespace ldpgraph

#endif  // LDPGRAPH_TESTS_TEST_UTIL_H_
