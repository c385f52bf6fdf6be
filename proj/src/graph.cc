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

#include "ldpgraph/graph.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

#include "absl/strings/cord.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace ldpgraph {
namespace {

constexpr char kValidationPayloadUrl[] = "type.ldpgraph/ValidationFailure";

constexpr ValidationFailure kAllFailures[] = {
    ValidationFailure::kMissingFile,       ValidationFailure::kMalformedInput,
    ValidationFailure::kIndexOutOfRange,   ValidationFailure::kDuplicateEdge,
    ValidationFailure::kLabelOutOfRange,   ValidationFailure::kFeatureOutOfRange,
    ValidationFailure::kShapeMismatch,
};

absl::StatusCode CodeFor(ValidationFailure failure) {
  switch (failure) {
    case ValidationFailure::kMissingFile:
      return absl::StatusCode::kNotFound;
    case ValidationFailure::kIndexOutOfRange:
    case ValidationFailure::kLabelOutOfRange:
    case ValidationFailure::kFeatureOutOfRange:
      return absl::StatusCode::kOutOfRange;
    case ValidationFailure::kDuplicateEdge:
      return absl::StatusCode::kAlreadyExists;
    default:
      return absl::StatusCode::kInvalidArgument;
  }
}

absl::StatusOr<std::string> ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeValidationError(ValidationFailure::kMissingFile,
                               absl::StrCat("cannot open ", path.string()));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Calls fn(line_number, line) for every non-blank line.
template <typename Fn>
absl::Status ForEachLine(std::string_view text, Fn fn) {
  int line_number = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_number;
    if (line.find_first_not_of(" \t") != std::string_view::npos) {
      absl::Status status = fn(line_number, line);
      if (!status.ok()) return status;
    }
    pos = end + 1;
  }
  return absl::OkStatus();
}

std::string_view Trim(std::string_view s) {
  const size_t begin = s.find_first_not_of(" \t");
  if (begin == std::string_view::npos) return {};
  const size_t end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

template <typename T>
bool ParseNumber(std::string_view token, T& out) {
  token = Trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end && !token.empty();
}

std::string FormatDouble(double value) {
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

absl::Status CheckNode(const BitMatrix& adjacency, int node) {
  if (node < 0 || node >= adjacency.rows()) {
    return MakeValidationError(
        ValidationFailure::kIndexOutOfRange,
        absl::StrCat("node ", node, " outside [0, ", adjacency.rows(), ")"));
  }
  return absl::OkStatus();
}

}  // namespace

int64_t Graph::num_arcs() const {
  int64_t arcs = 0;
  for (const auto& list : adjacency) arcs += static_cast<int64_t>(list.size());
  return arcs;
}

bool Graph::operator==(const Graph& other) const {
  return name == other.name && num_nodes == other.num_nodes &&
         adjacency == other.adjacency && features.rows() == other.features.rows() &&
         features.cols() == other.features.cols() &&
         features == other.features && labels == other.labels &&
         num_classes == other.num_classes && feature_range == other.feature_range;
}

absl::string_view ValidationFailureName(ValidationFailure failure) {
  switch (failure) {
    case ValidationFailure::kMissingFile:
      return "MissingFile";
    case ValidationFailure::kMalformedInput:
      return "MalformedInput";
    case ValidationFailure::kIndexOutOfRange:
      return "IndexOutOfRange";
    case ValidationFailure::kDuplicateEdge:
      return "DuplicateEdge";
    case ValidationFailure::kLabelOutOfRange:
      return "LabelOutOfRange";
    case ValidationFailure::kFeatureOutOfRange:
      return "FeatureOutOfRange";
    case ValidationFailure::kShapeMismatch:
      return "ShapeMismatch";
  }
  return "Unknown";
}

absl::Status MakeValidationError(ValidationFailure failure,
                                 std::string_view message) {
  absl::Status status(CodeFor(failure),
                      absl::StrCat(ValidationFailureName(failure), ": ",
                                   absl::string_view(message.data(),
                                                     message.size())));
  status.SetPayload(kValidationPayloadUrl,
                    absl::Cord(ValidationFailureName(failure)));
  return status;
}

std::optional<ValidationFailure> GetValidationFailure(
    const absl::Status& status) {
  absl::optional<absl::Cord> payload = status.GetPayload(kValidationPayloadUrl);
  if (!payload.has_value()) return std::nullopt;
  const std::string name(*payload);
  for (ValidationFailure failure : kAllFailures) {
    if (ValidationFailureName(failure) == name) return failure;
  }
  return std::nullopt;
}

absl::Status ValidateGraph(const Graph& graph) {
  const int n = graph.num_nodes;
  if (static_cast<int>(graph.adjacency.size()) != n ||
      static_cast<int>(graph.labels.size()) != n || graph.features.rows() != n) {
    return MakeValidationError(
        ValidationFailure::kShapeMismatch,
        absl::StrCat("num_nodes=", n, " but ", graph.adjacency.size(),
                     " adjacency lists, ", graph.labels.size(), " labels, ",
                     graph.features.rows(), " feature rows"));
  }
  for (int v = 0; v < n; ++v) {
    const auto& list = graph.adjacency[v];
    for (size_t k = 0; k < list.size(); ++k) {
      if (list[k] < 0 || list[k] >= n) {
        return MakeValidationError(
            ValidationFailure::kIndexOutOfRange,
            absl::StrCat("node ", v, " lists neighbor ", list[k]));
      }
      if (k > 0 && list[k] == list[k - 1]) {
        return MakeValidationError(
            ValidationFailure::kDuplicateEdge,
            absl::StrCat("node ", v, " lists neighbor ", list[k], " twice"));
      }
      if (k > 0 && list[k] < list[k - 1]) {
        return MakeValidationError(
            ValidationFailure::kMalformedInput,
            absl::StrCat("adjacency list of node ", v, " is not sorted"));
      }
    }
    if (graph.labels[v] < 0 || graph.labels[v] >= graph.num_classes) {
      return MakeValidationError(
          ValidationFailure::kLabelOutOfRange,
          absl::StrCat("node ", v, " has label ", graph.labels[v],
                       " outside [0, ", graph.num_classes, ")"));
    }
  }
  if (!(graph.feature_range.min <= graph.feature_range.max)) {
    return MakeValidationError(ValidationFailure::kMalformedInput,
                               "feature_range min exceeds max");
  }
  for (Eigen::Index i = 0; i < graph.features.rows(); ++i) {
    for (Eigen::Index j = 0; j < graph.features.cols(); ++j) {
      const double x = graph.features(i, j);
      if (!(x >= graph.feature_range.min && x <= graph.feature_range.max)) {
        return MakeValidationError(
            ValidationFailure::kFeatureOutOfRange,
            absl::StrCat("feature (", i, ", ", j, ") = ", x, " outside [",
                         graph.feature_range.min, ", ",
                         graph.feature_range.max, "]"));
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Graph> LoadDataset(const std::filesystem::path& dir,
                                  std::string_view name,
                                  const LoadOptions& options) {
  Graph graph;
  graph.name = name.empty() ? dir.filename().string() : std::string(name);
  if (graph.name.empty()) graph.name = dir.parent_path().filename().string();

  std::optional<int> meta_classes;
  std::optional<FeatureRange> meta_range;
  bool directed = false;
  const std::filesystem::path meta_path = dir / "meta.json";
  if (std::filesystem::exists(meta_path)) {
    absl::StatusOr<std::string> text = ReadFile(meta_path);
    if (!text.ok()) return text.status();
    nlohmann::json meta = nlohmann::json::parse(*text, nullptr, false);
    if (meta.is_discarded() || !meta.is_object()) {
      return MakeValidationError(ValidationFailure::kMalformedInput,
                                 "meta.json is not a JSON object");
    }
    try {
      if (meta.contains("name") && name.empty()) {
        graph.name = meta.at("name").get<std::string>();
      }
      if (meta.contains("num_classes")) {
        meta_classes = meta.at("num_classes").get<int>();
      }
      if (meta.contains("feature_range")) {
        const auto& range = meta.at("feature_range");
        meta_range = FeatureRange{range.at(0).get<double>(),
                                  range.at(1).get<double>()};
      }
      if (meta.contains("directed")) directed = meta.at("directed").get<bool>();
    } catch (const nlohmann::json::exception& e) {
      return MakeValidationError(ValidationFailure::kMalformedInput,
                                 absl::StrCat("meta.json: ", e.what()));
    }
  }
  const bool symmetrize = options.symmetrize.value_or(!directed);

  // Labels fix the node count.
  absl::StatusOr<std::string> label_text = ReadFile(dir / "labels.csv");
  if (!label_text.ok()) return label_text.status();
  absl::Status status =
      ForEachLine(*label_text, [&](int line_number, std::string_view line) {
        int label;
        if (!ParseNumber(line, label)) {
          return MakeValidationError(
              ValidationFailure::kMalformedInput,
              absl::StrCat("labels.csv:", line_number, ": not an integer"));
        }
        graph.labels.push_back(label);
        return absl::OkStatus();
      });
  if (!status.ok()) return status;
  graph.num_nodes = static_cast<int>(graph.labels.size());
  if (graph.num_nodes == 0) {
    return MakeValidationError(ValidationFailure::kMalformedInput,
                               "labels.csv lists no nodes");
  }
  int max_label = 0;
  for (int label : graph.labels) max_label = std::max(max_label, label);
  graph.num_classes = meta_classes.value_or(max_label + 1);

  absl::StatusOr<std::string> feature_text = ReadFile(dir / "features.csv");
  if (!feature_text.ok()) return feature_text.status();
  std::vector<double> values;
  int rows = 0;
  int dim = -1;
  status = ForEachLine(
      *feature_text, [&](int line_number, std::string_view line) {
        int count = 0;
        size_t pos = 0;
        while (true) {
          size_t comma = line.find(',', pos);
          std::string_view token = line.substr(
              pos, comma == std::string_view::npos ? std::string_view::npos
                                                   : comma - pos);
          double value;
          if (!ParseNumber(token, value)) {
            return MakeValidationError(
                ValidationFailure::kMalformedInput,
                absl::StrCat("features.csv:", line_number,
                             ": cannot parse value ", count));
          }
          values.push_back(value);
          ++count;
          if (comma == std::string_view::npos) break;
          pos = comma + 1;
        }
        if (dim < 0) dim = count;
        if (count != dim) {
          return MakeValidationError(
              ValidationFailure::kShapeMismatch,
              absl::StrCat("features.csv:", line_number, ": ", count,
                           " values, expected ", dim));
        }
        ++rows;
        return absl::OkStatus();
      });
  if (!status.ok()) return status;
  if (rows != graph.num_nodes) {
    return MakeValidationError(
        ValidationFailure::kShapeMismatch,
        absl::StrCat("features.csv has ", rows, " rows but labels.csv has ",
                     graph.num_nodes));
  }
  graph.features = Eigen::Map<RowMatrix>(values.data(), rows, dim);

  if (meta_range.has_value()) {
    graph.feature_range = *meta_range;
  } else {
    graph.feature_range = {graph.features.minCoeff(), graph.features.maxCoeff()};
  }

  absl::StatusOr<std::string> edge_text = ReadFile(dir / "edges.tsv");
  if (!edge_text.ok()) return edge_text.status();
  graph.adjacency.assign(graph.num_nodes, {});
  std::set<std::pair<int, int>> seen;
  status = ForEachLine(
      *edge_text, [&](int line_number, std::string_view line) {
        line = Trim(line);
        const size_t split = line.find_first_of(" \t");
        int src, dst;
        if (split == std::string_view::npos ||
            !ParseNumber(line.substr(0, split), src) ||
            !ParseNumber(line.substr(split + 1), dst)) {
          return MakeValidationError(
              ValidationFailure::kMalformedInput,
              absl::StrCat("edges.tsv:", line_number, ": expected src<TAB>dst"));
        }
        if (src < 0 || src >= graph.num_nodes || dst < 0 ||
            dst >= graph.num_nodes) {
          return MakeValidationError(
              ValidationFailure::kIndexOutOfRange,
              absl::StrCat("edges.tsv:", line_number, ": edge (", src, ", ",
                           dst, ") outside [0, ", graph.num_nodes, ")"));
        }
        const std::pair<int, int> key =
            symmetrize ? std::make_pair(std::min(src, dst), std::max(src, dst))
                       : std::make_pair(src, dst);
        if (!seen.insert(key).second) {
          return MakeValidationError(
              ValidationFailure::kDuplicateEdge,
              absl::StrCat("edges.tsv:", line_number, ": edge (", src, ", ",
                           dst, ") listed twice"));
        }
        graph.adjacency[src].push_back(dst);
        if (symmetrize && src != dst) graph.adjacency[dst].push_back(src);
        return absl::OkStatus();
      });
  if (!status.ok()) return status;
  for (auto& list : graph.adjacency) std::sort(list.begin(), list.end());

  status = ValidateGraph(graph);
  if (!status.ok()) return status;
  return graph;
}

absl::Status SaveDataset(const Graph& graph, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::InternalError(
        absl::StrCat("cannot create ", dir.string(), ": ", ec.message()));
  }
  {
    std::ofstream out(dir / "edges.tsv");
    for (int v = 0; v < graph.num_nodes; ++v) {
      for (int u : graph.adjacency[v]) out << v << '\t' << u << '\n';
    }
    if (!out) return absl::InternalError("failed writing edges.tsv");
  }
  {
    std::ofstream out(dir / "features.csv");
    std::string line;
    for (Eigen::Index i = 0; i < graph.features.rows(); ++i) {
      line.clear();
      for (Eigen::Index j = 0; j < graph.features.cols(); ++j) {
        if (j > 0) line.push_back(',');
        line += FormatDouble(graph.features(i, j));
      }
      line.push_back('\n');
      out << line;
    }
    if (!out) return absl::InternalError("failed writing features.csv");
  }
  {
    std::ofstream out(dir / "labels.csv");
    for (int label : graph.labels) out << label << '\n';
    if (!out) return absl::InternalError("failed writing labels.csv");
  }
  nlohmann::json meta = {
      {"name", graph.name},
      {"num_classes", graph.num_classes},
      {"feature_range", {graph.feature_range.min, graph.feature_range.max}},
      {"directed", true},
  };
  std::ofstream out(dir / "meta.json");
  out << meta.dump(2) << '\n';
  if (!out) return absl::InternalError("failed writing meta.json");
  return absl::OkStatus();
}

absl::StatusOr<int> Degree(const Graph& graph, int node) {
  if (node < 0 || node >= graph.num_nodes) {
    return MakeValidationError(
        ValidationFailure::kIndexOutOfRange,
        absl::StrCat("node ", node, " outside [0, ", graph.num_nodes, ")"));
  }
  return static_cast<int>(graph.adjacency[node].size());
}

absl::StatusOr<int> Degree(const BitMatrix& adjacency, int node) {
  absl::Status status = CheckNode(adjacency, node);
  if (!status.ok()) return status;
  return static_cast<int>(adjacency.RowCount(node));
}

absl::StatusOr<double> AverageDegree(const BitMatrix& adjacency) {
  if (!adjacency.is_square()) {
    return MakeValidationError(
        ValidationFailure::kShapeMismatch,
        absl::StrCat("adjacency is ", adjacency.rows(), "x", adjacency.cols()));
  }
  if (adjacency.rows() == 0) return 0.0;
  return static_cast<double>(adjacency.Count()) / adjacency.rows();
}

absl::StatusOr<double> AverageDegree(const RowMatrix& adjacency) {
  if (adjacency.rows() != adjacency.cols()) {
    return MakeValidationError(
        ValidationFailure::kShapeMismatch,
        absl::StrCat("adjacency is ", adjacency.rows(), "x", adjacency.cols()));
  }
  if (adjacency.rows() == 0) return 0.0;
  int64_t ones = 0;
  for (Eigen::Index i = 0; i < adjacency.rows(); ++i) {
    for (Eigen::Index j = 0; j < adjacency.cols(); ++j) {
      const double a = adjacency(i, j);
      if (a != 0.0 && a != 1.0) {
        return absl::InvalidArgumentError(
            absl::StrCat("entry (", i, ", ", j, ") = ", a, " is not binary"));
      }
      ones += a == 1.0;
    }
  }
  return static_cast<double>(ones) / adjacency.rows();
}

double AverageDegree(const Graph& graph) {
  if (graph.num_nodes == 0) return 0.0;
  return static_cast<double>(graph.num_arcs()) / graph.num_nodes;
}

BitMatrix ToBitMatrix(const Graph& graph) {
  BitMatrix matrix = BitMatrix::Square(graph.num_nodes);
  for (int v = 0; v < graph.num_nodes; ++v) {
    for (int u : graph.adjacency[v]) matrix.Set(v, u, true);
  }
  return matrix;
}

}  // namespace ldpgraph
