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

#include "ldpgraph/synthetic.h"

#include <algorithm>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace ldpgraph {
namespace {

TEST(SyntheticTest, ShapeAndValidity) {
  SyntheticOptions options;
  options.seed = 3;
  absl::StatusOr<Graph> graph = MakeSyntheticGraph(options);
  ASSERT_OK(graph);
  EXPECT_OK(ValidateGraph(*graph));
  EXPECT_EQ(graph->num_nodes, 200);
  EXPECT_EQ(graph->num_arcs(), 1000);
  EXPECT_EQ(graph->feature_dim(), 64);
  EXPECT_DOUBLE_EQ(AverageDegree(*graph), 5.0);
  for (int v = 0; v < graph->num_nodes; ++v) {
    EXPECT_EQ(graph->labels[v], v % 4);
    for (int u : graph->adjacency[v]) {
      EXPECT_NE(u, v);
      EXPECT_TRUE(std::binary_search(graph->adjacency[u].begin(),
                                     graph->adjacency[u].end(), v));
    }
  }
  EXPECT_TRUE(((graph->features.array() == 0) || (graph->features.array() == 1)).all());
}

TEST(SyntheticTest, HomophilyAndVocabulary) {
  SyntheticOptions options;
  options.num_nodes = 400;
  options.num_edges = 1600;
  options.seed = 5;
  const Graph graph = *MakeSyntheticGraph(options);
  int same = 0, total = 0;
  for (int v = 0; v < graph.num_nodes; ++v) {
    for (int u : graph.adjacency[v]) {
      same += graph.labels[u] == graph.labels[v];
      ++total;
    }
  }
  EXPECT_NEAR(static_cast<double>(same) / total, 0.8, 0.05);
  double in = 0, off = 0;
  for (int v = 0; v < graph.num_nodes; ++v) {
    for (int d = 0; d < graph.feature_dim(); ++d) {
      (d % 4 == graph.labels[v] ? in : off) += graph.features(v, d);
    }
  }
  EXPECT_NEAR(in / (400 * 16), 0.2, 0.02);
  EXPECT_NEAR(off / (400 * 48), 0.02, 0.005);
}

TEST(SyntheticTest, SeedDeterminesGraph) {
  SyntheticOptions options;
  options.seed = 8;
  EXPECT_EQ(*MakeSyntheticGraph(options), *MakeSyntheticGraph(options));
  SyntheticOptions other = options;
  other.seed = 9;
  EXPECT_FALSE(*MakeSyntheticGraph(options) == *MakeSyntheticGraph(other));
}

TEST(SyntheticTest, RejectsBadOptions) {
  SyntheticOptions options;
  options.num_nodes = 4;
  options.num_edges = 7;
  EXPECT_FALSE(MakeSyntheticGraph(options).ok());
  options.num_edges = 6;
  EXPECT_OK(MakeSyntheticGraph(options));
  options.homophily = 1.5;
  EXPECT_FALSE(MakeSyntheticGraph(options).ok());
}

}  // namespace
}  // namespace ldpgraph
