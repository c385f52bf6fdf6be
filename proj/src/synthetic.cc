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
#include <set>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "ldpgraph/random.h"

namespace ldpgraph {

absl::StatusOr<Graph> MakeSyntheticGraph(const SyntheticOptions& options) {
  const int n = options.num_nodes;
  const int k = options.num_classes;
  if (n < 2 || k < 1 || k > n || options.feature_dim < 1) {
    return absl::InvalidArgumentError(
        "need at least 2 nodes, 1..n classes and 1 feature");
  }
  const int64_t max_edges = static_cast<int64_t>(n) * (n - 1) / 2;
  if (options.num_edges < 0 || options.num_edges > max_edges) {
    return absl::InvalidArgumentError(
        absl::StrCat("edge count must lie in [0, ", max_edges, "]"));
  }
  if (!(options.homophily >= 0 && options.homophily <= 1) ||
      !(options.word_in_class >= 0 && options.word_in_class <= 1) ||
      !(options.word_off_class >= 0 && options.word_off_class <= 1)) {
    return absl::InvalidArgumentError("probabilities must lie in [0, 1]");
  }

  Graph graph;
  graph.name = options.name;
  graph.num_nodes = n;
  graph.num_classes = k;
  graph.labels.resize(n);
  std::vector<std::vector<int>> members(k);
  for (int v = 0; v < n; ++v) {
    graph.labels[v] = v % k;
    members[v % k].push_back(v);
  }

  Rng rng(options.seed);
  std::set<std::pair<int, int>> edges;
  // Fall back to uniform pairs once a block saturates.
  int64_t attempts = 0;
  const int64_t patience = 50 * (options.num_edges + 1);
  while (static_cast<int64_t>(edges.size()) < options.num_edges) {
    int u = static_cast<int>(rng.UniformInt(n));
    int v;
    const bool same = attempts < patience && rng.Bernoulli(options.homophily);
    ++attempts;
    if (same) {
      const std::vector<int>& block = members[graph.labels[u]];
      if (block.size() < 2) continue;
      v = block[rng.UniformInt(block.size())];
    } else {
      v = static_cast<int>(rng.UniformInt(n));
      if (attempts < patience && k > 1 && graph.labels[u] == graph.labels[v]) {
        continue;
      }
    }
    if (u == v) continue;
    edges.emplace(std::min(u, v), std::max(u, v));
  }
  graph.adjacency.assign(n, {});
  for (const auto& [u, v] : edges) {
    graph.adjacency[u].push_back(v);
    graph.adjacency[v].push_back(u);
  }
  for (auto& list : graph.adjacency) std::sort(list.begin(), list.end());

  graph.features = RowMatrix::Zero(n, options.feature_dim);
  for (int v = 0; v < n; ++v) {
    for (int d = 0; d < options.feature_dim; ++d) {
      const double p = d % k == graph.labels[v] ? options.word_in_class
                                                 : options.word_off_class;
      graph.features(v, d) = rng.Bernoulli(p) ? 1.0 : 0.0;
    }
  }
  graph.feature_range = {0.0, 1.0};
  return graph;
}

}  // namespace ldpgraph
