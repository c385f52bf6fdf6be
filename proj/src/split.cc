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

#include "ldpgraph/split.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace ldpgraph {

absl::string_view RoleName(Role role) {
  switch (role) {
    case Role::kTrain:
      return "train";
    case Role::kVal:
      return "val";
    case Role::kTest:
      return "test";
  }
  return "unknown";
}

std::vector<int> SplitAssignment::Nodes(Role role) const {
  std::vector<int> nodes;
  for (size_t v = 0; v < roles.size(); ++v) {
    if (roles[v] == role) nodes.push_back(static_cast<int>(v));
  }
  return nodes;
}

absl::StatusOr<SplitAssignment> MakeSplit(const Graph& graph,
                                          const SplitFractions& fractions,
                                          double label_rate, Rng& rng) {
  return MakeSplit(graph.num_nodes, fractions, label_rate, rng);
}

absl::StatusOr<SplitAssignment> MakeSplit(int num_nodes,
                                          const SplitFractions& fractions,
                                          double label_rate, Rng& rng) {
  if (fractions.train < 0 || fractions.val < 0 || fractions.test < 0 ||
      std::abs(fractions.train + fractions.val + fractions.test - 1.0) > 1e-9) {
    return absl::InvalidArgumentError(absl::StrCat(
        "split fractions must be nonnegative and sum to 1, got (",
        fractions.train, ", ", fractions.val, ", ", fractions.test, ")"));
  }
  if (!(label_rate > 0.0 && label_rate <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("label_rate must lie in (0, 1], got ", label_rate));
  }
  std::vector<int> order(num_nodes);
  std::iota(order.begin(), order.end(), 0);
  for (int i = num_nodes - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.UniformInt(static_cast<uint64_t>(i) + 1));
    std::swap(order[i], order[j]);
  }
  const int n_train = static_cast<int>(std::llround(fractions.train * num_nodes));
  const int n_val = std::min(
      num_nodes - n_train,
      static_cast<int>(std::llround(fractions.val * num_nodes)));

  SplitAssignment split;
  split.label_rate = label_rate;
  split.roles.assign(num_nodes, Role::kTest);
  for (int k = 0; k < num_nodes; ++k) {
    if (k < n_train) {
      split.roles[order[k]] = Role::kTrain;
    } else if (k < n_train + n_val) {
      split.roles[order[k]] = Role::kVal;
    }
  }
  // The small slack keeps e.g. 0.3 * 10 from rounding up to 4.
  const int n_labeled = std::min(
      n_train, static_cast<int>(std::ceil(label_rate * n_train - 1e-9)));
  split.labeled.assign(order.begin(), order.begin() + n_labeled);
  std::sort(split.labeled.begin(), split.labeled.end());
  return split;
}

absl::Status SaveSplit(const SplitAssignment& split,
                       const std::filesystem::path& path) {
  nlohmann::json roles = nlohmann::json::array();
  for (Role role : split.roles) roles.push_back(std::string(RoleName(role)));
  nlohmann::json doc = {{"roles", roles},
                        {"labeled", split.labeled},
                        {"label_rate", split.label_rate}};
  std::ofstream out(path);
  out << doc.dump() << '\n';
  if (!out) return absl::InternalError(absl::StrCat("cannot write ", path.string()));
  return absl::OkStatus();
}

absl::StatusOr<SplitAssignment> LoadSplit(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json doc = nlohmann::json::parse(buffer.str(), nullptr, false);
  if (doc.is_discarded()) {
    return absl::InvalidArgumentError(absl::StrCat(path.string(), " is not JSON"));
  }
  SplitAssignment split;
  try {
    for (const auto& role : doc.at("roles")) {
      const std::string name = role.get<std::string>();
      if (name == "train") {
        split.roles.push_back(Role::kTrain);
      } else if (name == "val") {
        split.roles.push_back(Role::kVal);
      } else if (name == "test") {
        split.roles.push_back(Role::kTest);
      } else {
        return absl::InvalidArgumentError(absl::StrCat("unknown role ", name));
      }
    }
    split.labeled = doc.at("labeled").get<std::vector<int>>();
    split.label_rate = doc.value("label_rate", 1.0);
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(e.what());
  }
  for (int v : split.labeled) {
    if (v < 0 || v >= static_cast<int>(split.roles.size()) ||
        split.roles[v] != Role::kTrain) {
      return absl::InvalidArgumentError(
          absl::StrCat("labeled node ", v, " is not a train node"));
    }
  }
  return split;
}

}  // namespace ldpgraph
