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

#include "ldpgraph/checkpoint.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "absl/strings/str_cat.h"
#include "ldpgraph/random.h"

namespace ldpgraph {
namespace {

constexpr char kMagic[] = "ldpgraph-checkpoint";

void WriteTensor(std::ostream& out, const char* kind, const RowMatrix& m) {
  out << kind << ' ' << m.rows() << ' ' << m.cols() << '\n';
  char buffer[40];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buffer, sizeof(buffer), "%a", m(i, j));
      out << (j > 0 ? " " : "") << buffer;
    }
    out << '\n';
  }
}

absl::StatusOr<RowMatrix> ReadTensor(std::istream& in, const std::string& kind) {
  std::string tag;
  Eigen::Index rows, cols;
  if (!(in >> tag >> rows >> cols) || tag != kind || rows < 0 || cols < 0) {
    return absl::DataLossError(absl::StrCat("expected ", kind, " tensor header"));
  }
  RowMatrix m(rows, cols);
  std::string token;
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    if (!(in >> token)) return absl::DataLossError("truncated tensor");
    char* end = nullptr;
    m.data()[k] = std::strtod(token.c_str(), &end);
    if (end == token.c_str()) return absl::DataLossError("bad tensor value");
  }
  return m;
}

}  // namespace

uint64_t ModelConfigHash(const ModelConfig& config) {
  const std::string canonical = absl::StrCat(
      ArchitectureName(config.architecture), "|", config.input_dim, "|",
      config.hidden_dim, "|", config.num_classes, "|",
      static_cast<int>(config.input_dropout), "|",
      static_cast<int>(config.transpose_aggregation));
  return HashString(canonical);
}

absl::Status SaveCheckpoint(const ModelState& state, const ModelConfig& config,
                            const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) return absl::InternalError(absl::StrCat("cannot write ", path.string()));
  out << kMagic << " v" << kCheckpointVersion << '\n';
  out << "config_hash " << std::hex << ModelConfigHash(config) << std::dec
      << '\n';
  out << "architecture " << ArchitectureName(config.architecture) << '\n';
  out << "weights " << state.weights.size() << '\n';
  for (const RowMatrix& w : state.weights) WriteTensor(out, "tensor", w);
  out << "adam_step " << state.theta_moments.step << '\n';
  out << "moments " << state.theta_moments.first.size() << '\n';
  for (size_t k = 0; k < state.theta_moments.first.size(); ++k) {
    WriteTensor(out, "first", state.theta_moments.first[k]);
    WriteTensor(out, "second", state.theta_moments.second[k]);
  }
  if (!out) return absl::InternalError("checkpoint write failed");
  return absl::OkStatus();
}

absl::StatusOr<ModelState> LoadCheckpoint(const ModelConfig& config,
                                          const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path.string()));
  std::string magic, version, key, architecture;
  if (!(in >> magic >> version) || magic != kMagic) {
    return absl::DataLossError("not an ldpgraph checkpoint");
  }
  if (version != absl::StrCat("v", kCheckpointVersion)) {
    return absl::FailedPreconditionError(
        absl::StrCat("unsupported checkpoint version ", version));
  }
  uint64_t hash = 0;
  if (!(in >> key >> std::hex >> hash >> std::dec) || key != "config_hash") {
    return absl::DataLossError("missing config hash");
  }
  if (hash != ModelConfigHash(config)) {
    return absl::FailedPreconditionError(
        "checkpoint was written for a different model configuration");
  }
  size_t count = 0;
  if (!(in >> key >> architecture >> key >> count)) {
    return absl::DataLossError("truncated checkpoint header");
  }
  ModelState state;
  for (size_t k = 0; k < count; ++k) {
    absl::StatusOr<RowMatrix> w = ReadTensor(in, "tensor");
    if (!w.ok()) return w.status();
    state.weights.push_back(*std::move(w));
  }
  size_t moments = 0;
  if (!(in >> key >> state.theta_moments.step >> key >> moments)) {
    return absl::DataLossError("missing optimizer state");
  }
  for (size_t k = 0; k < moments; ++k) {
    absl::StatusOr<RowMatrix> first = ReadTensor(in, "first");
    if (!first.ok()) return first.status();
    absl::StatusOr<RowMatrix> second = ReadTensor(in, "second");
    if (!second.ok()) return second.status();
    state.theta_moments.first.push_back(*std::move(first));
    state.theta_moments.second.push_back(*std::move(second));
  }
  return state;
}

}  // namespace ldpgraph
