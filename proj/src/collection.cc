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

#include "ldpgraph/collection.h"

#include <algorithm>
#include <fstream>
#include <thread>

#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace ldpgraph {

absl::StatusOr<MultiBitConfig> FeatureConfigFor(
    const Graph& graph, const PrivacyBudget& budget,
    const CollectionOptions& options) {
  const int m = options.sampled_dims.value_or(
      ChooseSampledDims(budget.eps_feature(), graph.feature_dim()));
  return MultiBitConfig::Create(graph.feature_dim(), m, graph.feature_range);
}

absl::StatusOr<UserShare> ObfuscateUserShare(const Graph& graph, int user,
                                             const PrivacyBudget& budget,
                                             const MultiBitConfig& config,
                                             uint64_t seed) {
  if (user < 0 || user >= graph.num_nodes) {
    return absl::OutOfRangeError(absl::StrCat("no user ", user));
  }
  std::vector<uint8_t> bits(graph.num_nodes, 0);
  for (int u : graph.adjacency[user]) bits[u] = 1;
  Rng adjacency_rng(SubstreamSeed(seed, user, StreamTag::kAdjacency));
  absl::StatusOr<std::vector<uint8_t>> noisy_bits =
      ObfuscateAdjacencyList(bits, budget.eps_edge(), adjacency_rng);
  if (!noisy_bits.ok()) return noisy_bits.status();

  const auto row = graph.features.row(user);
  std::vector<double> x(row.begin(), row.end());
  Rng feature_rng(SubstreamSeed(seed, user, StreamTag::kFeatures));
  absl::StatusOr<std::vector<int8_t>> encoded =
      MultiBitEncode(x, config, budget.eps_feature(), feature_rng);
  if (!encoded.ok()) return encoded.status();
  absl::StatusOr<std::vector<double>> rectified =
      MultiBitRectify(*encoded, config, budget.eps_feature());
  if (!rectified.ok()) return rectified.status();
  return UserShare{*std::move(noisy_bits), *std::move(rectified)};
}

absl::StatusOr<NoisyGraph> SimulateCollection(const Graph& graph,
                                              const PrivacyBudget& budget,
                                              uint64_t seed,
                                              const CollectionOptions& options) {
  absl::Status valid = ValidateGraph(graph);
  if (!valid.ok()) return valid;
  absl::StatusOr<MultiBitConfig> config =
      FeatureConfigFor(graph, budget, options);
  if (!config.ok()) return config.status();

  const int n = graph.num_nodes;
  NoisyGraph noisy{BitMatrix::Square(n),
                   RowMatrix(n, graph.feature_dim()),
                   budget,
                   *config,
                   seed};
  // Each worker owns a contiguous block of rows; rows are disjoint so the
  // gather needs no synchronization.
  const int threads = std::clamp(options.num_threads, 1, std::max(1, n));
  std::vector<absl::Status> errors(threads);
  auto work = [&](int t) {
    const int begin = static_cast<int>(int64_t{n} * t / threads);
    const int end = static_cast<int>(int64_t{n} * (t + 1) / threads);
    for (int user = begin; user < end; ++user) {
      absl::StatusOr<UserShare> share =
          ObfuscateUserShare(graph, user, budget, *config, seed);
      if (!share.ok()) {
        errors[t] = share.status();
        return;
      }
      noisy.adjacency.SetRow(user, share->adjacency);
      noisy.features.row(user) =
          Eigen::Map<const Vector>(share->features.data(),
                                   static_cast<Eigen::Index>(share->features.size()))
              .transpose();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  for (const absl::Status& error : errors) {
    if (!error.ok()) return error;
  }
  return noisy;
}

double ExpectedFlipCount(int64_t num_nodes, double eps_edge) {
  absl::StatusOr<double> p = FlipProbability(eps_edge);
  if (!p.ok()) return 0.0;
  const double n = static_cast<double>(num_nodes);
  return *p * n * n;
}

absl::StatusOr<DensityReport> MakeDensityReport(const BitMatrix& original,
                                                const BitMatrix& noisy) {
  if (original.rows() != noisy.rows() || original.cols() != noisy.cols()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "original is ", original.rows(), "x", original.cols(), ", noisy is ",
        noisy.rows(), "x", noisy.cols()));
  }
  absl::StatusOr<double> original_degree = AverageDegree(original);
  if (!original_degree.ok()) return original_degree.status();
  absl::StatusOr<double> noisy_degree = AverageDegree(noisy);
  if (!noisy_degree.ok()) return noisy_degree.status();

  DensityReport report;
  report.original_avg_degree = *original_degree;
  report.noisy_avg_degree = *noisy_degree;
  for (int row = 0; row < original.rows(); ++row) {
    const std::vector<int> before = original.RowIndices(row);
    int64_t kept = 0;
    for (int col : before) kept += noisy.Get(row, col);
    report.retained += kept;
    report.deleted += static_cast<int64_t>(before.size()) - kept;
    report.added += noisy.RowCount(row) - kept;
  }
  return report;
}

absl::StatusOr<DensityReport> MakeDensityReport(const Graph& original,
                                                const NoisyGraph& noisy) {
  return MakeDensityReport(ToBitMatrix(original), noisy.adjacency);
}

absl::Status SaveNoisyGraph(const NoisyGraph& noisy, const Graph& original,
                            const std::filesystem::path& dir) {
  Graph dump;
  dump.name = original.name + "-noisy";
  dump.num_nodes = noisy.adjacency.rows();
  dump.adjacency.resize(dump.num_nodes);
  for (int v = 0; v < dump.num_nodes; ++v) {
    dump.adjacency[v] = noisy.adjacency.RowIndices(v);
  }
  dump.features = noisy.features;
  dump.labels = original.labels;
  dump.num_classes = original.num_classes;
  dump.feature_range = {noisy.features.minCoeff(), noisy.features.maxCoeff()};
  absl::Status status = SaveDataset(dump, dir);
  if (!status.ok()) return status;

  nlohmann::json meta = {
      {"eps_edge", noisy.budget.eps_edge()},
      {"eps_feature", noisy.budget.eps_feature()},
      {"sampled_dims", noisy.feature_config.sampled_dims()},
      {"feature_range",
       {noisy.feature_config.range().min, noisy.feature_config.range().max}},
      {"seed", noisy.seed},
      {"source", original.name},
  };
  std::ofstream out(dir / "noise_meta.json");
  out << meta.dump(2) << '\n';
  if (!out) return absl::InternalError("failed writing noise_meta.json");
  return absl::OkStatus();
}

}  // namespace ldpgraph
