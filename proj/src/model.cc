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

#include "ldpgraph/model.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace ldpgraph {
namespace {

bool IsSage(const ModelConfig& config) {
  return config.architecture == Architecture::kSageMean;
}

// B * h where B is the adjacency or its transpose.
RowMatrix Propagate(const RowMatrix& a, bool transpose, const RowMatrix& h) {
  if (transpose) return a.transpose() * h;
  return a * h;
}

// B^T * h.
RowMatrix PropagateBack(const RowMatrix& a, bool transpose,
                        const RowMatrix& h) {
  if (transpose) return a * h;
  return a.transpose() * h;
}

Vector WeightedDegree(const RowMatrix& a, bool transpose) {
  if (transpose) return a.colwise().sum().transpose();
  return a.rowwise().sum();
}

RowMatrix DropoutMask(Eigen::Index rows, Eigen::Index cols, double rate,
                      Rng& rng) {
  RowMatrix mask(rows, cols);
  const double keep_scale = 1.0 / (1.0 - rate);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      mask(i, j) = rng.Uniform() < rate ? 0.0 : keep_scale;
    }
  }
  return mask;
}

double Selu(double z) {
  return z > 0 ? kSeluScale * z : kSeluScale * kSeluAlpha * std::expm1(z);
}

double SeluDerivative(double z) {
  return z > 0 ? kSeluScale : kSeluScale * kSeluAlpha * std::exp(z);
}

RowMatrix Softmax(const RowMatrix& z) {
  RowMatrix p(z.rows(), z.cols());
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const double top = z.row(i).maxCoeff();
    p.row(i) = (z.row(i).array() - top).exp();
    p.row(i) /= p.row(i).sum();
  }
  return p;
}

// Row-wise dot product.
Vector RowDot(const RowMatrix& x, const RowMatrix& y) {
  return x.cwiseProduct(y).rowwise().sum();
}

// Runs one layer on `input`, filling everything in `layer` but `output`.
void LayerForward(const ModelState& model, const ModelConfig& config,
                  const RowMatrix& a, int index, const RowMatrix& input,
                  LayerCache& layer) {
  const bool transpose = config.transpose_aggregation;
  layer.weighted_degree = WeightedDegree(a, transpose);
  if (IsSage(config)) {
    const RowMatrix& w_self = model.weights[2 * index];
    const RowMatrix& w_neigh = model.weights[2 * index + 1];
    layer.messages = input * w_neigh;
    const Vector scale =
        layer.weighted_degree.cwiseMax(1.0).cwiseInverse();
    layer.aggregated = scale.asDiagonal() * Propagate(a, transpose, layer.messages);
    layer.pre_activation = input * w_self + layer.aggregated;
  } else {
    layer.messages = input * model.weights[index];
    const Vector scale = (layer.weighted_degree.array() + 1.0).inverse();
    layer.aggregated =
        scale.asDiagonal() *
        (layer.messages + Propagate(a, transpose, layer.messages));
    layer.pre_activation = layer.aggregated;
  }
}

// Backward through one layer given d loss / d pre_activation. Writes weight
// gradients into `grads`, adds the adjacency contribution (w.r.t. the
// aggregation matrix B) into `b_grad` when non-null, and returns
// d loss / d input when requested.
RowMatrix LayerBackward(const ModelState& model, const ModelConfig& config,
                        const RowMatrix& a, int index, const RowMatrix& input,
                        const LayerCache& layer, const RowMatrix& d_pre,
                        bool want_input_grad, std::vector<RowMatrix>& grads,
                        RowMatrix* b_grad) {
  const bool transpose = config.transpose_aggregation;
  RowMatrix d_input;
  if (IsSage(config)) {
    const RowMatrix& w_self = model.weights[2 * index];
    const RowMatrix& w_neigh = model.weights[2 * index + 1];
    const Vector scale = layer.weighted_degree.cwiseMax(1.0).cwiseInverse();
    const RowMatrix t = scale.asDiagonal() * d_pre;
    const RowMatrix d_messages = PropagateBack(a, transpose, t);
    grads[2 * index] = input.transpose() * d_pre;
    grads[2 * index + 1] = input.transpose() * d_messages;
    if (want_input_grad) {
      d_input = d_pre * w_self.transpose() + d_messages * w_neigh.transpose();
    }
    if (b_grad != nullptr) {
      Vector correction = RowDot(t, layer.aggregated);
      for (Eigen::Index v = 0; v < correction.size(); ++v) {
        if (!(layer.weighted_degree(v) > 1.0)) correction(v) = 0.0;
      }
      b_grad->noalias() += t * layer.messages.transpose();
      b_grad->colwise() -= correction;
    }
  } else {
    const RowMatrix& w = model.weights[index];
    const Vector scale = (layer.weighted_degree.array() + 1.0).inverse();
    const RowMatrix t = scale.asDiagonal() * d_pre;
    const RowMatrix d_messages = t + PropagateBack(a, transpose, t);
    grads[index] = input.transpose() * d_messages;
    if (want_input_grad) d_input = d_messages * w.transpose();
    if (b_grad != nullptr) {
      const Vector correction = RowDot(t, layer.aggregated);
      b_grad->noalias() += t * layer.messages.transpose();
      b_grad->colwise() -= correction;
    }
  }
  return d_input;
}

}  // namespace

absl::string_view ArchitectureName(Architecture architecture) {
  switch (architecture) {
    case Architecture::kGcn:
      return "gcn";
    case Architecture::kSageMean:
      return "sage";
  }
  return "unknown";
}

absl::StatusOr<Architecture> ParseArchitecture(std::string_view name) {
  if (name == "gcn") return Architecture::kGcn;
  if (name == "sage" || name == "sage-mean" || name == "graphsage") {
    return Architecture::kSageMean;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown architecture '",
                   absl::string_view(name.data(), name.size()), "'"));
}

absl::Status ValidateModelConfig(const ModelConfig& config) {
  if (config.input_dim < 1 || config.hidden_dim < 1 || config.num_classes < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "layer sizes must be positive, got [", config.input_dim, ", ",
        config.hidden_dim, ", ", config.num_classes, "]"));
  }
  if (!(config.dropout_rate >= 0.0 && config.dropout_rate < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("dropout rate must lie in [0, 1), got ", config.dropout_rate));
  }
  return absl::OkStatus();
}

bool ModelState::AllFinite() const {
  for (const RowMatrix& w : weights) {
    if (!w.allFinite()) return false;
  }
  return true;
}

absl::StatusOr<ModelState> InitModel(const ModelConfig& config, Rng& rng) {
  absl::Status valid = ValidateModelConfig(config);
  if (!valid.ok()) return valid;
  const std::array<std::pair<int, int>, 2> shapes = {
      std::pair{config.input_dim, config.hidden_dim},
      std::pair{config.hidden_dim, config.num_classes}};
  ModelState state;
  for (const auto& [fan_in, fan_out] : shapes) {
    const int copies = IsSage(config) ? 2 : 1;
    for (int c = 0; c < copies; ++c) {
      const double bound = std::sqrt(6.0 / (fan_in + fan_out));
      RowMatrix w(fan_in, fan_out);
      for (Eigen::Index i = 0; i < w.size(); ++i) {
        w.data()[i] = (2.0 * rng.Uniform() - 1.0) * bound;
      }
      state.weights.push_back(std::move(w));
    }
  }
  return state;
}

absl::StatusOr<RowMatrix> Forward(const ModelState& model,
                                  const ModelConfig& config,
                                  const CalibratedAdjacency& adjacency,
                                  const RowMatrix& features, Rng* rng,
                                  bool train_mode, ForwardCache* cache) {
  const RowMatrix& a = adjacency.values();
  const Eigen::Index n = features.rows();
  if (a.rows() != n || a.cols() != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "adjacency is ", a.rows(), "x", a.cols(), " for ", n, " nodes"));
  }
  if (features.cols() != config.input_dim) {
    return absl::InvalidArgumentError(absl::StrCat(
        "features have ", features.cols(), " columns, model expects ",
        config.input_dim));
  }
  const size_t expected_weights = IsSage(config) ? 4 : 2;
  if (model.weights.size() != expected_weights) {
    return absl::InvalidArgumentError(
        absl::StrCat("model has ", model.weights.size(), " weight tensors, ",
                     ArchitectureName(config.architecture), " needs ",
                     expected_weights));
  }
  const bool dropout = train_mode && config.dropout_rate > 0.0;
  if (dropout && rng == nullptr) {
    return absl::InvalidArgumentError("training-mode forward needs an rng");
  }

  ForwardCache local;
  ForwardCache& c = cache != nullptr ? *cache : local;
  c = ForwardCache{};
  c.features = &features;

  LayerCache& first = c.layers[0];
  const RowMatrix* input = &features;
  if (dropout && config.input_dropout) {
    first.mask = DropoutMask(n, features.cols(), config.dropout_rate, *rng);
    first.dropped_input = features.cwiseProduct(first.mask);
    input = &first.dropped_input;
  }
  LayerForward(model, config, a, 0, *input, first);
  first.output = first.pre_activation.unaryExpr(&Selu);

  LayerCache& second = c.layers[1];
  input = &first.output;
  if (dropout) {
    second.mask =
        DropoutMask(n, first.output.cols(), config.dropout_rate, *rng);
    second.dropped_input = first.output.cwiseProduct(second.mask);
    input = &second.dropped_input;
  }
  LayerForward(model, config, a, 1, *input, second);
  second.output = Softmax(second.pre_activation);
  if (!second.output.allFinite()) {
    return absl::InternalError("non-finite activation in forward pass");
  }
  c.valid = true;
  return second.output;
}

absl::StatusOr<LossResult> CrossEntropyLoss(const RowMatrix& probs,
                                            std::span<const int> labels,
                                            std::span<const int> labeled,
                                            const LabelSmoothing& smoothing) {
  if (labeled.empty()) {
    return absl::InvalidArgumentError("loss needs at least one labeled node");
  }
  if (static_cast<Eigen::Index>(labels.size()) != probs.rows()) {
    return absl::InvalidArgumentError(
        absl::StrCat(labels.size(), " labels for ", probs.rows(), " nodes"));
  }
  const int hops = smoothing.op != nullptr ? smoothing.hops : 0;
  // Forward through the smoothing steps, keeping each normalized iterate.
  std::vector<RowMatrix> iterates = {probs};
  std::vector<Vector> totals;
  if (hops > 0) {
    if (smoothing.op->num_nodes() != probs.rows()) {
      return absl::InvalidArgumentError(
          "label smoothing operator does not match the prediction rows");
    }
    absl::Status degrees = smoothing.op->CheckDegrees();
    if (!degrees.ok()) return degrees;
  }
  for (int step = 0; step < hops; ++step) {
    RowMatrix q = smoothing.op->Apply(iterates.back());
    Vector total = q.rowwise().sum();
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
      if (total(i) > 0) q.row(i) /= total(i);
    }
    totals.push_back(std::move(total));
    iterates.push_back(std::move(q));
  }

  LossResult result;
  result.smoothed = iterates.back();
  RowMatrix d = RowMatrix::Zero(probs.rows(), probs.cols());
  const double inv_count = 1.0 / static_cast<double>(labeled.size());
  double loss = 0.0;
  for (int v : labeled) {
    if (v < 0 || v >= probs.rows()) {
      return absl::OutOfRangeError(absl::StrCat("labeled node ", v));
    }
    const int y = labels[v];
    if (y < 0 || y >= probs.cols()) {
      return absl::OutOfRangeError(
          absl::StrCat("node ", v, " has label ", y, " outside [0, ",
                       probs.cols(), ")"));
    }
    const double p = result.smoothed(v, y);
    if (p > kProbabilityFloor) {
      loss -= std::log(p);
      d(v, y) -= inv_count / p;
    } else {
      loss -= std::log(kProbabilityFloor);
    }
  }
  result.value = loss * inv_count;

  // Back through the normalize-after-each-step smoothing.
  for (int step = hops - 1; step >= 0; --step) {
    const RowMatrix& r = iterates[step + 1];
    const Vector& total = totals[step];
    RowMatrix dq = d;
    const Vector dot = RowDot(d, r);
    for (Eigen::Index i = 0; i < dq.rows(); ++i) {
      if (total(i) > 0) {
        dq.row(i) = (d.row(i).array() - dot(i)) / total(i);
      }
    }
    d = smoothing.op->ApplyTranspose(dq);
  }
  result.probs_gradient = std::move(d);
  return result;
}

absl::StatusOr<Gradients> Backward(const ModelState& model,
                                   const ModelConfig& config,
                                   const CalibratedAdjacency& adjacency,
                                   const ForwardCache& cache,
                                   const RowMatrix& probs_gradient,
                                   bool adjacency_gradient) {
  if (!cache.valid) {
    return absl::FailedPreconditionError("backward called without a forward pass");
  }
  const RowMatrix& a = adjacency.values();
  const LayerCache& first = cache.layers[0];
  const LayerCache& second = cache.layers[1];
  if (probs_gradient.rows() != second.output.rows() ||
      probs_gradient.cols() != second.output.cols()) {
    return absl::InvalidArgumentError("probability gradient has the wrong shape");
  }
  if (a.rows() != second.output.rows()) {
    return absl::InvalidArgumentError("adjacency does not match the forward pass");
  }

  Gradients grads;
  grads.weights.resize(model.weights.size());
  RowMatrix b_grad;
  RowMatrix* b_ptr = nullptr;
  if (adjacency_gradient) {
    b_grad = RowMatrix::Zero(a.rows(), a.cols());
    b_ptr = &b_grad;
  }

  // Softmax.
  const RowMatrix& p = second.output;
  const Vector dot = RowDot(probs_gradient, p);
  const RowMatrix d_pre2 =
      p.cwiseProduct((probs_gradient.colwise() - dot));

  const RowMatrix& input2 =
      second.mask.size() > 0 ? second.dropped_input : first.output;
  RowMatrix d_hidden = LayerBackward(model, config, a, 1, input2, second,
                                     d_pre2, true, grads.weights, b_ptr);
  if (second.mask.size() > 0) d_hidden = d_hidden.cwiseProduct(second.mask);
  const RowMatrix d_pre1 = d_hidden.cwiseProduct(
      first.pre_activation.unaryExpr(&SeluDerivative));

  const RowMatrix& input1 =
      first.mask.size() > 0 ? first.dropped_input : *cache.features;
  LayerBackward(model, config, a, 0, input1, first, d_pre1, false,
                grads.weights, b_ptr);

  if (adjacency_gradient) {
    grads.adjacency = config.transpose_aggregation
                          ? RowMatrix(b_grad.transpose())
                          : std::move(b_grad);
  }
  return grads;
}

}  // namespace ldpgraph
