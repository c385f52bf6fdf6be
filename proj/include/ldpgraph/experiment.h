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

#ifndef LDPGRAPH_EXPERIMENT_H_
#define LDPGRAPH_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "ldpgraph/collection.h"
#include "ldpgraph/graph.h"
#include "ldpgraph/model.h"
#include "ldpgraph/split.h"
#include "ldpgraph/trainer.h"

namespace ldpgraph {

struct BudgetPair {
  double eps_x = 1.0;
  double eps_a = 7.0;
};

struct ExperimentSpec {
  // Used for seeding and reports; defaults to the graph's name.
  std::string dataset;
  ModelConfig model;
  std::vector<BudgetPair> budgets;
  std::vector<double> label_rates = {1.0};
  std::vector<TrainingMode> modes = {TrainingMode::kSolitude};
  int repeats = 5;
  uint64_t seed = 0;
  // With `grid`, every (cell, repeat, mode) runs its own search around
  // `train`; otherwise `train` is used as is.
  TrainConfig train;
  bool grid = false;
  std::optional<HyperparameterGrid> grid_values;
  std::optional<size_t> grid_budget;
  SplitFractions fractions;
  std::optional<int> sampled_dims;
  // Concurrent (cell, repeat) jobs.
  int jobs = 1;
  // results.jsonl, table.md and noise_meta.json land here.
  std::filesystem::path out;
};

// hash(root, dataset, eps_x, eps_a, label_rate, repeat).
uint64_t CellSeed(uint64_t root, std::string_view dataset, double eps_x,
                  double eps_a, double label_rate, int repeat);

// Never blocks; returns one message per suspicious budget.
std::vector<std::string> BudgetGuard(const Graph& graph, double eps_a,
                                     double eps_x);

nlohmann::json ModelConfigToJson(const ModelConfig& config);
absl::StatusOr<ModelConfig> ModelConfigFromJson(const nlohmann::json& json);

struct CellSummary {
  double label_rate = 0;
  double eps_x = 0;
  double eps_a = 0;
  TrainingMode mode = TrainingMode::kSolitude;
  // Over the non-divergent repeats, as fractions.
  double mean = 0;
  // Sample standard deviation; NaN with fewer than two runs.
  double stddev = 0;
  int runs = 0;
  int diverged = 0;
};

struct ExperimentReport {
  // Every results.jsonl row, in (cell, repeat, mode) order.
  std::vector<nlohmann::json> rows;
  std::vector<CellSummary> cells;
  std::vector<std::string> warnings;
};

// Groups rows by (label_rate, eps_x, eps_a, mode) in first-seen order.
std::vector<CellSummary> SummarizeRows(const std::vector<nlohmann::json>& rows);

// Markdown table with one section per (label rate, eps_x), one row per mode
// and one column per eps_a. Cells read "mean ± std" in percent.
std::string FormatTable(const std::string& dataset, const ModelConfig& model,
                        const std::vector<CellSummary>& cells, bool grid);

// Runs every (budget, label rate, repeat) cell: one collection and one split
// per cell shared by all modes, then training per mode. Divergent runs are
// recorded with a null accuracy. Writes the report files when `spec.out` is
// set.
absl::StatusOr<ExperimentReport> RunExperiment(const Graph& graph,
                                               const ExperimentSpec& spec);

// Re-runs one results.jsonl row from its snapshot.
absl::StatusOr<RunResult> ReproduceRow(const Graph& graph,
                                       const nlohmann::json& row);

}  // namespace ldpgraph

#endif  // LDPGRAPH_EXPERIMENT_H_
