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

#ifndef LDPGRAPH_TRAINER_H_
#define LDPGRAPH_TRAINER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "json.hpp"
#include "ldpgraph/calibration.h"
#include "ldpgraph/collection.h"
#include "ldpgraph/model.h"
#include "ldpgraph/split.h"

namespace ldpgraph {

// kBase trains directly on the noisy graph; kSmoothOnly adds feature and
// label smoothing but keeps the structure fixed; kSolitude also calibrates
// the structure jointly with the model.
enum class TrainingMode { kBase, kSmoothOnly, kSolitude };

absl::string_view TrainingModeName(TrainingMode mode);
absl::StatusOr<TrainingMode> ParseTrainingMode(std::string_view name);

// Which graph the label smoothing propagates over.
enum class LabelGraph {
  kNoisy,
  // The current calibrated adjacency thresholded at 0.5.
  kCalibrated,
};

struct TrainConfig {
  double lr_theta = 0.01;
  double lr_adj = 0.01;
  double lambda1 = 1e-3;
  double lambda2 = 1e-3;
  int lx = 2;
  int ly = 2;
  int max_epochs = 500;
  double dropout_rate = 0.5;
  // Applied to the model weights only.
  double weight_decay = 1e-3;
  uint64_t seed = 0;
  // Model steps per adjacency step.
  int theta_steps_per_adj_step = 1;
  SmoothingNormalization normalization = SmoothingNormalization::kDegreeProduct;
  LabelGraph label_graph = LabelGraph::kNoisy;
};

absl::Status ValidateTrainConfig(const TrainConfig& config);

// Zeroes whatever `mode` does not use.
TrainConfig WithMode(TrainConfig config, TrainingMode mode);

nlohmann::json TrainConfigToJson(const TrainConfig& config);
absl::StatusOr<TrainConfig> TrainConfigFromJson(const nlohmann::json& json);

struct RunResult {
  double test_accuracy = 0;
  double best_val_accuracy = 0;
  int best_epoch = -1;
  std::vector<double> val_trace;
  // ||A^c||_1 of the selected model, and of the noisy adjacency.
  double adjacency_l1 = 0;
  double noisy_adjacency_l1 = 0;
  double wall_seconds = 0;
  uint64_t seed = 0;
  nlohmann::json config;
};

// True for the error Train returns when the loss or parameters go
// non-finite; the message names the epoch.
bool IsDivergence(const absl::Status& status);

// Joint training: features are smoothed once up front, then every epoch
// takes theta_steps_per_adj_step Adam steps on the weights followed by one
// Adam step on the calibrated adjacency (loss + lambda1 fidelity), a
// soft-threshold by lambda2 * lr_adj, and projection onto [0, 1]. The model
// with the best validation accuracy is kept and scored once on the test set.
// `labels` holds every node's label; only split.labeled feed the loss.
absl::StatusOr<RunResult> Train(const NoisyGraph& noisy,
                                std::span<const int> labels,
                                const SplitAssignment& split,
                                ModelConfig model_config,
                                const TrainConfig& config);

// Fraction of `nodes` whose argmax class (lowest index on ties) matches.
absl::StatusOr<double> Accuracy(const RowMatrix& probs,
                                std::span<const int> labels,
                                std::span<const int> nodes);

// Accuracy of the eval-mode, label-smoothed predictions on `role`.
absl::StatusOr<double> Evaluate(const ModelState& model,
                                const ModelConfig& config,
                                const CalibratedAdjacency& adjacency,
                                const RowMatrix& features,
                                std::span<const int> labels,
                                const SplitAssignment& split, Role role,
                                const LabelSmoothing& smoothing = {});

struct HyperparameterGrid {
  std::vector<double> lr_theta;
  std::vector<double> dropout_rate;
  std::vector<double> weight_decay;
  std::vector<int> lx;
  std::vector<int> ly;
  std::vector<double> lambda1;
  std::vector<double> lambda2;
  std::vector<double> lr_adj;

  // Learning rate, dropout and weight decay in {1e-4, 1e-3, 1e-2, 1e-1};
  // smoothing steps in {0, 2, 4, 8}; lambdas in {1e-5, 1e-4, 1e-3, 1e-2}.
  // lr_adj is not searched and keeps `base.lr_adj`.
  static HyperparameterGrid Full(const TrainConfig& base);
  static HyperparameterGrid Singleton(const TrainConfig& base);

  size_t size() const;
};

// Candidate configurations in enumeration order, after applying `mode` and
// dropping duplicates.
std::vector<TrainConfig> ExpandGrid(const HyperparameterGrid& grid,
                                    const TrainConfig& base, TrainingMode mode);

struct GridSearchOptions {
  // Train at most this many candidates, drawn uniformly without replacement.
  std::optional<size_t> budget;
  uint64_t seed = 0;
};

struct GridSearchResult {
  TrainConfig best_config;
  RunResult best_result;
  size_t evaluated = 0;
  size_t diverged = 0;
};

// Exhaustive (or budgeted random-subset) search selecting by validation
// accuracy; ties keep the earlier candidate.
absl::StatusOr<GridSearchResult> GridSearch(
    const NoisyGraph& noisy, std::span<const int> labels,
    const SplitAssignment& split, const ModelConfig& model_config,
    const TrainConfig& base, TrainingMode mode, const HyperparameterGrid& grid,
    const GridSearchOptions& options = {});

}  // namespace ldpgraph

#endif  // LDPGRAPH_TRAINER_H_
