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

#ifndef LDPGRAPH_LINQS_H_
#define LDPGRAPH_LINQS_H_

#include <filesystem>
#include <string_view>

#include "absl/status/statusor.h"
#include "ldpgraph/graph.h"

namespace ldpgraph {

// Reads the LINQS citation format:
//   <name>.content  "paper_id<TAB>w_1 ... w_D<TAB>class_label" per line
//   <name>.cites    "cited_id<TAB>citing_id" per line
// Nodes keep the order of the content file and classes are numbered by first
// appearance. Citations are symmetrized; self-citations, duplicates and
// citations to papers missing from the content file are dropped.
absl::StatusOr<Graph> ImportLinqs(const std::filesystem::path& content,
                                  const std::filesystem::path& cites,
                                  std::string_view name);

}  // namespace ldpgraph

#endif  // LDPGRAPH_LINQS_H_
