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

#ifndef LDPGRAPH_SYNTHETIC_H_
#define LDPGRAPH_SYNTHETIC_H_

#include <cstdint>
#include <string>

#include "absl/status/statusor.h"
#include "ldpgraph/graph.h"

namespace ldpgraph {

// Contextual stochastic block model with bag-of-words features.
struct SyntheticOptions {
  std::string name = "synthetic";
  int num_nodes = 200;
  // Distinct undirected edges; each becomes two arcs.
  int64_t num_edges = 500;
  int num_classes = 4;
  int feature_dim = 64;
  // Fraction of edges joining nodes of the same class.
  double homophily = 0.8;
  // Word probabilities inside and outside a node's class vocabulary. The
  // vocabulary of class k is every dimension d with d % num_classes == k.
  double word_in_class = 0.2;
  double word_off_class = 0.02;
  uint64_t seed = 0;
};

// Labels cycle through the classes in node order. Undirected edges are
// stored as arcs in both directions.
absl::StatusOr<Graph> MakeSyntheticGraph(const SyntheticOptions& options);

}  // namespace ldpgraph

#endif  // LDPGRAPH_SYNTHETIC_H_
