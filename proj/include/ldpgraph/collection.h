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

#ifndef LDPGRAPH_COLLECTION_H_
#define LDPGRAPH_COLLECTION_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpgraph/adjacency_matrix.h"
#include "ldpgraph/graph.h"
#include "ldpgraph/matrix.h"
#include "ldpgraph/mechanisms.h"

namespace ldpgraph {

// What the curator reconstructs from the users' obfuscated shares.
struct NoisyGraph {
  // Row i is user i's randomized adjacency list.
  BitMatrix adjacency;
  // Row i is user i's rectified feature vector.
  RowMatrix features;
  PrivacyBudget budget;
  MultiBitConfig feature_config;
  uint64_t seed = 0;
};

struct CollectionOptions {
  // Overrides ChooseSampledDims.
  std::optional<int> sampled_dims;
  // Users are independent; any thread count yields the same NoisyGraph.
  int num_threads = 1;
};

// One user's answer to the curator's query.
struct UserShare {
  std::vector<uint8_t> adjacency;
  std::vector<double> features;
};

// Obfuscates user `user` from its own data and its own substreams only.
absl::StatusOr<UserShare> ObfuscateUserShare(const Graph& graph, int user,
                                             const PrivacyBudget& budget,
                                             const MultiBitConfig& config,
                                             uint64_t seed);

absl::StatusOr<MultiBitConfig> FeatureConfigFor(const Graph& graph,
                                                const PrivacyBudget& budget,
                                                const CollectionOptions& options);

// Runs the collection round: every user obfuscates locally, the curator
// stacks the answers.
absl::StatusOr<NoisyGraph> SimulateCollection(
    const Graph& graph, const PrivacyBudget& budget, uint64_t seed,
    const CollectionOptions& options = {});

// Expected number of flipped bits over the whole n x n matrix: p * n^2.
double ExpectedFlipCount(int64_t num_nodes, double eps_edge);

struct DensityReport {
  double original_avg_degree = 0;
  double noisy_avg_degree = 0;
  int64_t added = 0;     // 0 -> 1
  int64_t deleted = 0;   // 1 -> 0
  int64_t retained = 0;  // 1 -> 1
};

absl::StatusOr<DensityReport> MakeDensityReport(const Graph& original,
                                                const NoisyGraph& noisy);
absl::StatusOr<DensityReport> MakeDensityReport(const BitMatrix& original,
                                                const BitMatrix& noisy);

// Writes the noisy graph in the dataset directory format (labels taken from
// `original`) plus noise_meta.json with the budgets and seed.
absl::Status SaveNoisyGraph(const NoisyGraph& noisy, const Graph& original,
                            const std::filesystem::path& dir);

}  // namespace ldpgraph

#endif  // LDPGRAPH_COLLECTION_H_
