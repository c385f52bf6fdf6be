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

#include "ldpgraph/linqs.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace ldpgraph {

absl::StatusOr<Graph> ImportLinqs(const std::filesystem::path& content,
                                  const std::filesystem::path& cites,
                                  std::string_view name) {
  std::ifstream content_in(content);
  if (!content_in) {
    return MakeValidationError(ValidationFailure::kMissingFile,
                               absl::StrCat("cannot read ", content.string()));
  }
  Graph graph;
  graph.name = std::string(name);
  std::unordered_map<std::string, int> node_of;
  std::unordered_map<std::string, int> class_of;
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_number = 0;
  while (std::getline(content_in, line)) {
    ++line_number;
    absl::string_view text = absl::StripAsciiWhitespace(line);
    if (text.empty()) continue;
    std::vector<absl::string_view> fields =
        absl::StrSplit(text, absl::ByAnyChar(" \t"), absl::SkipEmpty());
    if (fields.size() < 3) {
      return MakeValidationError(
          ValidationFailure::kMalformedInput,
          absl::StrCat(content.string(), ":", line_number,
                       ": expected id, features and label"));
    }
    std::vector<double> row;
    row.reserve(fields.size() - 2);
    for (size_t i = 1; i + 1 < fields.size(); ++i) {
      double value = 0;
      auto [ptr, ec] = std::from_chars(fields[i].data(),
                                       fields[i].data() + fields[i].size(),
                                       value);
      if (ec != std::errc() || ptr != fields[i].data() + fields[i].size()) {
        return MakeValidationError(
            ValidationFailure::kMalformedInput,
            absl::StrCat(content.string(), ":", line_number,
                         ": bad feature value"));
      }
      row.push_back(value);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      return MakeValidationError(
          ValidationFailure::kShapeMismatch,
          absl::StrCat(content.string(), ":", line_number,
                       ": feature count differs from the first row"));
    }
    const std::string id(fields.front());
    if (!node_of.emplace(id, static_cast<int>(rows.size())).second) {
      return MakeValidationError(
          ValidationFailure::kMalformedInput,
          absl::StrCat(content.string(), ":", line_number,
                       ": duplicate paper id ", id));
    }
    const std::string label(fields.back());
    auto [it, inserted] =
        class_of.emplace(label, static_cast<int>(class_of.size()));
    graph.labels.push_back(it->second);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    return MakeValidationError(ValidationFailure::kMalformedInput,
                               absl::StrCat(content.string(), " is empty"));
  }
  graph.num_nodes = static_cast<int>(rows.size());
  graph.num_classes = static_cast<int>(class_of.size());
  graph.features.resize(graph.num_nodes, rows.front().size());
  double lo = rows[0].empty() ? 0.0 : rows[0][0];
  double hi = lo;
  for (int v = 0; v < graph.num_nodes; ++v) {
    for (size_t d = 0; d < rows[v].size(); ++d) {
      graph.features(v, d) = rows[v][d];
      lo = std::min(lo, rows[v][d]);
      hi = std::max(hi, rows[v][d]);
    }
  }
  graph.feature_range = {lo, hi > lo ? hi : lo + 1.0};

  std::ifstream cites_in(cites);
  if (!cites_in) {
    return MakeValidationError(ValidationFailure::kMissingFile,
                               absl::StrCat("cannot read ", cites.string()));
  }
  graph.adjacency.assign(graph.num_nodes, {});
  line_number = 0;
  while (std::getline(cites_in, line)) {
    ++line_number;
    absl::string_view text = absl::StripAsciiWhitespace(line);
    if (text.empty()) continue;
    std::vector<absl::string_view> fields =
        absl::StrSplit(text, absl::ByAnyChar(" \t"), absl::SkipEmpty());
    if (fields.size() != 2) {
      return MakeValidationError(
          ValidationFailure::kMalformedInput,
          absl::StrCat(cites.string(), ":", line_number,
                       ": expected two paper ids"));
    }
    auto a = node_of.find(std::string(fields[0]));
    auto b = node_of.find(std::string(fields[1]));
    if (a == node_of.end() || b == node_of.end() || a->second == b->second) {
      continue;
    }
    graph.adjacency[a->second].push_back(b->second);
    graph.adjacency[b->second].push_back(a->second);
  }
  for (std::vector<int>& list : graph.adjacency) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return graph;
}

}  // namespace ldpgraph
