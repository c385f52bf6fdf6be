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

#ifndef LDPGRAPH_SPLIT_H_
#define LDPGRAPH_SPLIT_H_

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "ldpgraph/graph.h"
#include "ldpgraph/random.h"

namespace ldpgraph {

enum class Role : uint8_t { kTrain, kVal, kTest };

absl::string_view RoleName(Role role);

struct SplitFractions {
  double train = 0.5;
  double val = 0.25;
  double test = 0.25;
};

struct SplitAssignment {
  std::vector<Role> roles;
  // Train nodes whose labels the curator sees, ascending.
  std::vector<int> labeled;
  double label_rate = 1.0;

  // Nodes holding `role`, ascending.
  std::vector<int> Nodes(Role role) const;

  bool operator==(const SplitAssignment&) const = default;
};

// Assigns roles from a uniform (Fisher-Yates) permutation of the nodes: the
// first round(train * n) go to train, the next round(val * n) to val, the rest
// to test. The first ceil(label_rate * |train|) train nodes in permutation
// order are labeled.
absl::StatusOr<SplitAssignment> MakeSplit(const Graph& graph,
                                          const SplitFractions& fractions,
                                          double label_rate, Rng& rng);
absl::StatusOr<SplitAssignment> MakeSplit(int num_nodes,
                                          const SplitFractions& fractions,
                                          double label_rate, Rng& rng);

// split.json: {"roles": ["train", ...], "labeled": [...], "label_rate": r}.
absl::Status SaveSplit(const SplitAssignment& split,
                       const std::filesystem::path& path);
absl::StatusOr<SplitAssignment> LoadSplit(const std::filesystem::path& path);

}  // namespace ldpgraph

#endif  // LDPGRAPH_SPLIT_H_
