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

#include "ldpgraph/trainer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "absl/strings/cord.h"
#include "absl/strings/str_cat.h"
#include "ldpgraph/random.h"

namespace ldpgraph {
namespace {

constexpr char kDivergencePayloadUrl[] = "type.ldpgraph/Divergence";

absl::Status DivergenceError(int epoch, absl::string_view what) {
  absl::Status status(
      absl::StatusCode::kAborted,
      absl::StrCat("training diverged at epoch ", epoch, ": ", what));
  status.SetPayload(kDivergencePayloadUrl, absl::Cord(absl::StrCat(epoch)));
  return status;
}

const char* NormalizationName(SmoothingNormalization normalization) {
  return normalization == SmoothingNormalization::kDegreeProduct ? "product"
                                                                 : "sqrt";
}

const char* LabelGraphName(LabelGraph graph) {
  return graph == LabelGraph::kNoisy ? "noisy" : "calibrated";
}

}  // namespace

absl::string_view TrainingModeName(TrainingMode mode) {
  switch (mode) {
    case TrainingMode::kBase:
      return "base";
    case TrainingMode::kSmoothOnly:
      return "smooth-only";
    case TrainingMode::kSolitude:
      return "solitude";
  }
  return "unknown";
}

absl::StatusOr<TrainingMode> ParseTrainingMode(std::string_view name) {
  if (name == "base") return TrainingMode::kBase;
  if (name == "smooth-only") return TrainingMode::kSmoothOnly;
  if (name == "solitude") return TrainingMode::kSolitude;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown mode '", absl::string_view(name.data(), name.size()),
                   "'"));
}

absl::Status ValidateTrainConfig(const TrainConfig& config) {
  if (config.max_epochs < 1) {
    return absl::InvalidArgumentError("max_epochs must be at least 1");
  }
  if (config.theta_steps_per_adj_step < 1) {
    return absl::InvalidArgumentError(
        "theta_steps_per_adj_step must be at least 1");
  }
  const double rates[] = {config.lr_theta, config.lr_adj, config.lambda1,
                          config.lambda2, config.weight_decay};
  for (double rate : rates) {
    if (!(rate >= 0) || !std::isfinite(rate)) {
      return absl::InvalidArgumentError(
          "learning rates and coefficients must be finite and nonnegative");
    }
  }
  if (config.lx < 0 || config.ly < 0) {
    return absl::InvalidArgumentError("smoothing steps must be nonnegative");
  }
  if (!(config.dropout_rate >= 0 && config.dropout_rate < 1)) {
    return absl::InvalidArgumentError("dropout rate must lie in [0, 1)");
  }
  return absl::OkStatus();
}

TrainConfig WithMode(TrainConfig config, TrainingMode mode) {
  if (mode != TrainingMode::kSolitude) {
    config.lambda1 = 0;
    config.lambda2 = 0;
    config.lr_adj = 0;
    config.label_graph = LabelGraph::kNoisy;
  }
  if (mode == TrainingMode::kBase) {
    config.lx = 0;
    config.ly = 0;
  }
  return config;
}

nlohmann::json TrainConfigToJson(const TrainConfig& config) {
  return {
      {"lr_theta", config.lr_theta},
      {"lr_adj", config.lr_adj},
      {"lambda1", config.lambda1},
      {"lambda2", config.lambda2},
      {"lx", config.lx},
      {"ly", config.ly},
      {"max_epochs", config.max_epochs},
      {"dropout_rate", config.dropout_rate},
      {"weight_decay", config.weight_decay},
      {"seed", config.seed},
      {"theta_steps_per_adj_step", config.theta_steps_per_adj_step},
      {"normalization", NormalizationName(config.normalization)},
      {"label_graph", LabelGraphName(config.label_graph)},
  };
}

absl::StatusOr<TrainConfig> TrainConfigFromJson(const nlohmann::json& json) {
  TrainConfig config;
  try {
    config.lr_theta = json.at("lr_theta").get<double>();
    config.lr_adj = json.at("lr_adj").get<double>();
    config.lambda1 = json.at("lambda1").get<double>();
    config.lambda2 = json.at("lambda2").get<double>();
    config.lx = json.at("lx").get<int>();
    config.ly = json.at("ly").get<int>();
    config.max_epochs = json.at("max_epochs").get<int>();
    config.dropout_rate = json.at("dropout_rate").get<double>();
    config.weight_decay = json.at("weight_decay").get<double>();
    config.seed = json.at("seed").get<uint64_t>();
    config.theta_steps_per_adj_step =
        json.value("theta_steps_per_adj_step", 1);
    config.normalization = json.value("normalization", "product") == "sqrt"
                               ? SmoothingNormalization::kSymmetricSqrt
                               : SmoothingNormalization::kDegreeProduct;
    config.label_graph = json.value("label_graph", "noisy") == "calibrated"
                             ? LabelGraph::kCalibrated
                             : LabelGraph::kNoisy;
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("bad train config: ", e.what()));
  }
  absl::Status valid = ValidateTrainConfig(config);
  if (!valid.ok()) return valid;
  return config;
}

bool IsDivergence(const absl::Status& status) {
  return status.GetPayload(kDivergencePayloadUrl).has_value();
}

absl::StatusOr<double> Accuracy(const RowMatrix& probs,
                                std::span<const int> labels,
                                std::span<const int> nodes) {
  if (nodes.empty()) {
    return absl::InvalidArgumentError("accuracy over an empty node set");
  }
  int correct = 0;
  for (int v : nodes) {
    if (v < 0 || v >= probs.rows() || v >= static_cast<int>(labels.size())) {
      return absl::OutOfRangeError(absl::StrCat("node ", v));
    }
    int best = 0;
    for (Eigen::Index k = 1; k < probs.cols(); ++k) {
      if (probs(v, k) > probs(v, best)) best = static_cast<int>(k);
    }
    correct += best == labels[v];
  }
  return static_cast<double>(correct) / nodes.size();
}

absl::StatusOr<double> Evaluate(const ModelState& model,
                                const ModelConfig& config,
                                const CalibratedAdjacency& adjacency,
                                const RowMatrix& features,
                                std::span<const int> labels,
                                const SplitAssignment& split, Role role,
                                const LabelSmoothing& smoothing) {
  const std::vector<int> nodes = split.Nodes(role);
  if (nodes.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("no ", RoleName(role), " nodes to evaluate"));
  }
  absl::StatusOr<RowMatrix> probs =
      Forward(model, config, adjacency, features, nullptr, false);
  if (!probs.ok()) return probs.status();
  if (smoothing.op != nullptr && smoothing.hops > 0) {
    absl::StatusOr<RowMatrix> smoothed =
        SmoothLabels(*probs, *smoothing.op, smoothing.hops);
    if (!smoothed.ok()) return smoothed.status();
    return Accuracy(*smoothed, labels, nodes);
  }
  return Accuracy(*probs, labels, nodes);
}

absl::StatusOr<RunResult> Train(const NoisyGraph& noisy,
                                std::span<const int> labels,
                                const SplitAssignment& split,
                                ModelConfig model_config,
                                const TrainConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  absl::Status valid = ValidateTrainConfig(config);
  if (!valid.ok()) return valid;
  const int n = noisy.adjacency.rows();
  if (static_cast<int>(labels.size()) != n ||
      static_cast<int>(split.roles.size()) != n || noisy.features.rows() != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "noisy graph has ", n, " nodes, labels ", labels.size(), ", split ",
        split.roles.size()));
  }
  if (split.labeled.empty()) {
    return absl::InvalidArgumentError("no labeled training nodes");
  }
  model_config.dropout_rate = config.dropout_rate;
  model_config.input_dim = static_cast<int>(noisy.features.cols());

  SmoothingOptions smoothing_options;
  smoothing_options.normalization = config.normalization;
  const SmoothingOperator noisy_op =
      SmoothingOperator::FromAdjacency(noisy.adjacency, smoothing_options);

  absl::StatusOr<RowMatrix> smoothed =
      SmoothFeatures(noisy.features, noisy_op, config.lx);
  if (!smoothed.ok()) return smoothed.status();
  const RowMatrix features = *std::move(smoothed);

  CalibratedAdjacency adjacency = CalibratedAdjacency::FromBinary(noisy.adjacency);
  const bool update_adjacency = config.lr_adj > 0;
  RowMatrix noisy_dense;
  if (update_adjacency && config.lambda1 > 0) noisy_dense = adjacency.values();

  Rng init_rng(DeriveSeed(config.seed, {static_cast<uint64_t>(StreamTag::kInit)}));
  Rng dropout_rng(
      DeriveSeed(config.seed, {static_cast<uint64_t>(StreamTag::kDropout)}));
  absl::StatusOr<ModelState> init = InitModel(model_config, init_rng);
  if (!init.ok()) return init.status();
  ModelState model = *std::move(init);

  AdamOptions theta_adam;
  theta_adam.learning_rate = config.lr_theta;
  theta_adam.weight_decay = config.weight_decay;
  AdamOptions adj_adam;
  adj_adam.learning_rate = config.lr_adj;

  std::optional<SmoothingOperator> calibrated_op;
  auto label_smoothing = [&]() -> LabelSmoothing {
    if (config.ly == 0) return {};
    if (config.label_graph == LabelGraph::kCalibrated && update_adjacency) {
      calibrated_op = SmoothingOperator::FromThreshold(adjacency.values(), 0.5,
                                                       smoothing_options);
      return {&*calibrated_op, config.ly};
    }
    return {&noisy_op, config.ly};
  };

  RunResult result;
  result.seed = config.seed;
  result.noisy_adjacency_l1 = static_cast<double>(noisy.adjacency.Count());
  result.config = TrainConfigToJson(config);
  result.val_trace.reserve(config.max_epochs);

  ModelState best_model = model;
  std::optional<CalibratedAdjacency> best_adjacency;
  double best_val = -1.0;
  ForwardCache cache;

  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    LabelSmoothing smoothing = label_smoothing();
    for (int step = 0; step < config.theta_steps_per_adj_step; ++step) {
      absl::StatusOr<RowMatrix> probs = Forward(
          model, model_config, adjacency, features, &dropout_rng, true, &cache);
      if (!probs.ok()) return DivergenceError(epoch, probs.status().message());
      absl::StatusOr<LossResult> loss =
          CrossEntropyLoss(*probs, labels, split.labeled, smoothing);
      if (!loss.ok()) return loss.status();
      if (!std::isfinite(loss->value)) {
        return DivergenceError(epoch, "non-finite loss");
      }
      absl::StatusOr<Gradients> grads = Backward(
          model, model_config, adjacency, cache, loss->probs_gradient, false);
      if (!grads.ok()) return grads.status();
      absl::Status stepped =
          AdamStep(theta_adam, grads->weights, model.weights, model.theta_moments);
      if (!stepped.ok()) return DivergenceError(epoch, stepped.message());
      if (!model.AllFinite()) {
        return DivergenceError(epoch, "non-finite model parameters");
      }
    }

    if (update_adjacency) {
      absl::StatusOr<RowMatrix> probs = Forward(
          model, model_config, adjacency, features, &dropout_rng, true, &cache);
      if (!probs.ok()) return DivergenceError(epoch, probs.status().message());
      absl::StatusOr<LossResult> loss =
          CrossEntropyLoss(*probs, labels, split.labeled, smoothing);
      if (!loss.ok()) return loss.status();
      if (!std::isfinite(loss->value)) {
        return DivergenceError(epoch, "non-finite loss");
      }
      absl::StatusOr<Gradients> grads = Backward(
          model, model_config, adjacency, cache, loss->probs_gradient, true);
      if (!grads.ok()) return grads.status();
      if (config.lambda1 > 0) {
        AddFidelityGradient(noisy_dense, adjacency, config.lambda1,
                            grads->adjacency);
      }
      absl::StatusOr<RowMatrix> update =
          AdamUpdate(adj_adam, grads->adjacency, adjacency.values(),
                     model.adjacency_moments);
      if (!update.ok()) return DivergenceError(epoch, update.status().message());
      adjacency.ProximalUpdate(*update, config.lambda2 * config.lr_adj);
      smoothing = label_smoothing();
    }

    absl::StatusOr<double> val = Evaluate(model, model_config, adjacency,
                                          features, labels, split, Role::kVal,
                                          smoothing);
    if (!val.ok()) return DivergenceError(epoch, val.status().message());
    result.val_trace.push_back(*val);
    if (*val > best_val) {
      best_val = *val;
      result.best_epoch = epoch;
      best_model.weights = model.weights;
      if (update_adjacency) best_adjacency = adjacency;
    }
  }

  const CalibratedAdjacency& final_adjacency =
      best_adjacency.has_value() ? *best_adjacency : adjacency;
  LabelSmoothing final_smoothing;
  if (config.ly > 0) {
    if (config.label_graph == LabelGraph::kCalibrated && update_adjacency) {
      calibrated_op = SmoothingOperator::FromThreshold(
          final_adjacency.values(), 0.5, smoothing_options);
      final_smoothing = {&*calibrated_op, config.ly};
    } else {
      final_smoothing = {&noisy_op, config.ly};
    }
  }
  absl::StatusOr<double> test =
      Evaluate(best_model, model_config, final_adjacency, features, labels,
               split, Role::kTest, final_smoothing);
  if (!test.ok()) return test.status();
  result.test_accuracy = *test;
  result.best_val_accuracy = best_val;
  result.adjacency_l1 = final_adjacency.L1Norm();
  result.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return result;
}

HyperparameterGrid HyperparameterGrid::Full(const TrainConfig& base) {
  const std::vector<double> rates = {1e-4, 1e-3, 1e-2, 1e-1};
  const std::vector<int> steps = {0, 2, 4, 8};
  const std::vector<double> lambdas = {1e-5, 1e-4, 1e-3, 1e-2};
  return {rates, rates, rates, steps, steps, lambdas, lambdas, {base.lr_adj}};
}

HyperparameterGrid HyperparameterGrid::Singleton(const TrainConfig& base) {
  return {{base.lr_theta}, {base.dropout_rate}, {base.weight_decay},
          {base.lx},       {base.ly},           {base.lambda1},
          {base.lambda2},  {base.lr_adj}};
}

size_t HyperparameterGrid::size() const {
  return lr_theta.size() * dropout_rate.size() * weight_decay.size() *
         lx.size() * ly.size() * lambda1.size() * lambda2.size() *
         lr_adj.size();
}

std::vector<TrainConfig> ExpandGrid(const HyperparameterGrid& grid,
                                    const TrainConfig& base,
                                    TrainingMode mode) {
  std::vector<TrainConfig> configs;
  auto same = [](const TrainConfig& a, const TrainConfig& b) {
    return a.lr_theta == b.lr_theta && a.dropout_rate == b.dropout_rate &&
           a.weight_decay == b.weight_decay && a.lx == b.lx && a.ly == b.ly &&
           a.lambda1 == b.lambda1 && a.lambda2 == b.lambda2 &&
           a.lr_adj == b.lr_adj;
  };
  for (double lr : grid.lr_theta)
    for (double dropout : grid.dropout_rate)
      for (double decay : grid.weight_decay)
        for (int lx : grid.lx)
          for (int ly : grid.ly)
            for (double l1 : grid.lambda1)
              for (double l2 : grid.lambda2)
                for (double lr_adj : grid.lr_adj) {
                  TrainConfig c = base;
                  c.lr_theta = lr;
                  c.dropout_rate = dropout;
                  c.weight_decay = decay;
                  c.lx = lx;
                  c.ly = ly;
                  c.lambda1 = l1;
                  c.lambda2 = l2;
                  c.lr_adj = lr_adj;
                  c = WithMode(c, mode);
                  const bool seen = std::any_of(
                      configs.begin(), configs.end(),
                      [&](const TrainConfig& other) { return same(c, other); });
                  if (!seen) configs.push_back(c);
                }
  return configs;
}

absl::StatusOr<GridSearchResult> GridSearch(
    const NoisyGraph& noisy, std::span<const int> labels,
    const SplitAssignment& split, const ModelConfig& model_config,
    const TrainConfig& base, TrainingMode mode, const HyperparameterGrid& grid,
    const GridSearchOptions& options) {
  if (grid.size() == 0) {
    return absl::InvalidArgumentError("every grid dimension needs a value");
  }
  std::vector<TrainConfig> candidates = ExpandGrid(grid, base, mode);
  if (options.budget.has_value() && *options.budget < candidates.size()) {
    if (*options.budget == 0) {
      return absl::InvalidArgumentError("grid search budget must be positive");
    }
    std::vector<size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), size_t{0});
    Rng rng(DeriveSeed(options.seed, {static_cast<uint64_t>(StreamTag::kGrid)}));
    for (size_t k = 0; k < *options.budget; ++k) {
      const size_t pick = k + rng.UniformInt(order.size() - k);
      std::swap(order[k], order[pick]);
    }
    order.resize(*options.budget);
    std::sort(order.begin(), order.end());
    std::vector<TrainConfig> subset;
    for (size_t index : order) subset.push_back(candidates[index]);
    candidates = std::move(subset);
  }

  std::optional<GridSearchResult> best;
  size_t evaluated = 0;
  size_t diverged = 0;
  for (const TrainConfig& candidate : candidates) {
    absl::StatusOr<RunResult> run =
        Train(noisy, labels, split, model_config, candidate);
    ++evaluated;
    if (!run.ok()) {
      if (IsDivergence(run.status())) {
        ++diverged;
        continue;
      }
      return run.status();
    }
    if (!best.has_value() ||
        run->best_val_accuracy > best->best_result.best_val_accuracy) {
      best = GridSearchResult{candidate, *std::move(run), 0, 0};
    }
  }
  if (!best.has_value()) {
    return absl::AbortedError("every grid candidate diverged");
  }
  best->evaluated = evaluated;
  best->diverged = diverged;
  return *std::move(best);
}

}  // namespace ldpgraph
