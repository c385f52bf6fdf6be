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

#ifndef LDPGRAPH_MODEL_H_
#define LDPGRAPH_MODEL_H_

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "ldpgraph/adam.h"
#include "ldpgraph/calibration.h"
#include "ldpgraph/matrix.h"
#include "ldpgraph/random.h"

namespace ldpgraph {

enum class Architecture { kGcn, kSageMean };

absl::string_view ArchitectureName(Architecture architecture);
absl::StatusOr<Architecture> ParseArchitecture(std::string_view name);

inline constexpr double kSeluAlpha = 1.6732632423543772848170429916717;
inline constexpr double kSeluScale = 1.0507009873554804934193349852946;

// Two graph-convolution layers: input_dim -> hidden_dim (SeLU, dropout) ->
// num_classes (softmax).
struct ModelConfig {
  Architecture architecture = Architecture::kGcn;
  int input_dim = 0;
  int hidden_dim = 16;
  int num_classes = 0;
  double dropout_rate = 0.5;
  // Also drop input features during training.
  bool input_dropout = false;
  // Aggregate along columns of the adjacency (in-lists) instead of rows.
  bool transpose_aggregation = false;
};

absl::Status ValidateModelConfig(const ModelConfig& config);

struct ModelState {
  // kGcn: {W0, W1}. kSageMean: {W0_self, W0_neigh, W1_self, W1_neigh}.
  std::vector<RowMatrix> weights;
  AdamMoments theta_moments;
  AdamMoments adjacency_moments;

  bool AllFinite() const;
};

// Xavier-uniform weights, U(-a, a) with a = sqrt(6 / (fan_in + fan_out)).
absl::StatusOr<ModelState> InitModel(const ModelConfig& config, Rng& rng);

// Intermediates recorded by Forward for Backward.
struct LayerCache {
  // Dropout mask (already scaled by 1 / (1 - rate)); empty when unused.
  RowMatrix mask;
  // Layer input after dropout; empty when no mask was applied.
  RowMatrix dropped_input;
  // gcn: input * W. sage: input * W_neigh.
  RowMatrix messages;
  // gcn: self-inclusive weighted mean. sage: neighbor-only weighted mean.
  RowMatrix aggregated;
  RowMatrix pre_activation;
  RowMatrix output;
  // Per-node sum of adjacency weights.
  Vector weighted_degree;
};

struct ForwardCache {
  bool valid = false;
  const RowMatrix* features = nullptr;
  std::array<LayerCache, 2> layers;
};

// Class probabilities [n x K]. Node v aggregates
//   gcn:  (h_v + sum_u a_vu h_u) / (1 + sum_u a_vu)
//   sage: [h_v, sum_u a_vu h_u / max(1, sum_u a_vu)]
// and dropout runs only when `train_mode` (then `rng` is required).
// `features` must outlive `cache`.
absl::StatusOr<RowMatrix> Forward(const ModelState& model,
                                  const ModelConfig& config,
                                  const CalibratedAdjacency& adjacency,
                                  const RowMatrix& features, Rng* rng,
                                  bool train_mode, ForwardCache* cache = nullptr);

// Label propagation applied to the predictions before the loss.
struct LabelSmoothing {
  const SmoothingOperator* op = nullptr;
  int hops = 0;
};

struct LossResult {
  double value = 0;
  // d loss / d probs (before smoothing).
  RowMatrix probs_gradient;
  // Predictions after label smoothing.
  RowMatrix smoothed;
};

inline constexpr double kProbabilityFloor = 1e-12;

// Mean cross-entropy over `labeled` of the smoothed predictions, with
// probabilities floored at kProbabilityFloor inside the log.
absl::StatusOr<LossResult> CrossEntropyLoss(const RowMatrix& probs,
                                            std::span<const int> labels,
                                            std::span<const int> labeled,
                                            const LabelSmoothing& smoothing);

struct Gradients {
  std::vector<RowMatrix> weights;
  // Empty unless requested.
  RowMatrix adjacency;
};

// Reverse pass through the recorded forward, replaying its dropout masks.
absl::StatusOr<Gradients> Backward(const ModelState& model,
                                   const ModelConfig& config,
                                   const CalibratedAdjacency& adjacency,
                                   const ForwardCache& cache,
                                   const RowMatrix& probs_gradient,
                                   bool adjacency_gradient);

}  // namespace ldpgraph

#endif  // LDPGRAPH_MODEL_H_
