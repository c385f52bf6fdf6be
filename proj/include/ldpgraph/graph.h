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

#ifndef LDPGRAPH_GRAPH_H_
#define LDPGRAPH_GRAPH_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "ldpgraph/adjacency_matrix.h"
#include "ldpgraph/matrix.h"

namespace ldpgraph {

// Public per-dataset bounds on every feature value.
struct FeatureRange {
  double min = 0.0;
  double max = 1.0;

  bool operator==(const FeatureRange&) const = default;
};

// A directed graph as held collectively by its users: node i owns
// adjacency[i] (its out-list) and features.row(i).
struct Graph {
  std::string name;
  int num_nodes = 0;
  // Sorted, duplicate-free out-neighbor lists.
  std::vector<std::vector<int>> adjacency;
  RowMatrix features;
  std::vector<int> labels;
  int num_classes = 0;
  FeatureRange feature_range;

  int feature_dim() const { return static_cast<int>(features.cols()); }
  // Number of directed arcs (ones in the adjacency matrix).
  int64_t num_arcs() const;

  bool operator==(const Graph& other) const;
};

// Distinct dataset validation failures. Attached to the returned status as a
// payload; see GetValidationFailure.
enum class ValidationFailure {
  kMissingFile,
  kMalformedInput,
  kIndexOutOfRange,
  kDuplicateEdge,
  kLabelOutOfRange,
  kFeatureOutOfRange,
  kShapeMismatch,
};

absl::string_view ValidationFailureName(ValidationFailure failure);

absl::Status MakeValidationError(ValidationFailure failure,
                                 std::string_view message);

// Returns the failure attached by MakeValidationError, if any.
std::optional<ValidationFailure> GetValidationFailure(
    const absl::Status& status);

struct LoadOptions {
  // Insert both directions of every listed edge. When unset, the
  // `directed` flag of meta.json decides; a missing flag means the source
  // corpus is undirected and edges are symmetrized.
  std::optional<bool> symmetrize;
};

// Reads a dataset directory:
//   edges.tsv     "src<TAB>dst" per line, 0-based
//   features.csv  row i = node i, comma-separated reals
//   labels.csv    one class index per line
//   meta.json     optional {name, num_classes, feature_range, directed}
// `name` overrides the name in meta.json (default: directory name).
absl::StatusOr<Graph> LoadDataset(const std::filesystem::path& dir,
                                  std::string_view name = {},
                                  const LoadOptions& options = {});

// Writes `graph` as a directed dataset that LoadDataset reads back unchanged.
absl::Status SaveDataset(const Graph& graph, const std::filesystem::path& dir);

absl::Status ValidateGraph(const Graph& graph);

absl::StatusOr<int> Degree(const Graph& graph, int node);
absl::StatusOr<int> Degree(const BitMatrix& adjacency, int node);

// Ones per node of a square binary matrix.
absl::StatusOr<double> AverageDegree(const BitMatrix& adjacency);
absl::StatusOr<double> AverageDegree(const RowMatrix& adjacency);
double AverageDegree(const Graph& graph);

BitMatrix ToBitMatrix(const Graph& graph);

}  // namespace ldpgraph

#endif  // LDPGRAPH_GRAPH_H_
