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

#include "ldpgraph/adam.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace ldpgraph {
namespace {

void EnsureShape(AdamMoments& moments, size_t index, const RowMatrix& like) {
  if (moments.first.size() <= index) {
    moments.first.resize(index + 1);
    moments.second.resize(index + 1);
  }
  if (moments.first[index].rows() != like.rows() ||
      moments.first[index].cols() != like.cols()) {
    moments.first[index] = RowMatrix::Zero(like.rows(), like.cols());
    moments.second[index] = RowMatrix::Zero(like.rows(), like.cols());
  }
}

RowMatrix StepFor(const AdamOptions& options, const RowMatrix& gradient,
                  const RowMatrix& param, AdamMoments& moments, size_t index) {
  EnsureShape(moments, index, param);
  RowMatrix& m = moments.first[index];
  RowMatrix& v = moments.second[index];
  const double correction1 = 1.0 - std::pow(options.beta1, moments.step);
  const double correction2 = 1.0 - std::pow(options.beta2, moments.step);
  if (options.weight_decay != 0.0) {
    const RowMatrix g = gradient + options.weight_decay * param;
    m = options.beta1 * m + (1.0 - options.beta1) * g;
    v = options.beta2 * v + (1.0 - options.beta2) * g.cwiseAbs2();
  } else {
    m = options.beta1 * m + (1.0 - options.beta1) * gradient;
    v = options.beta2 * v + (1.0 - options.beta2) * gradient.cwiseAbs2();
  }
  const double lr = options.learning_rate / correction1;
  const double inv_sqrt_c2 = 1.0 / std::sqrt(correction2);
  return (lr * m.array() /
          ((v.array().sqrt() * inv_sqrt_c2) + options.epsilon))
      .matrix();
}

}  // namespace

absl::Status AdamStep(const AdamOptions& options,
                      std::span<const RowMatrix> gradients,
                      std::vector<RowMatrix>& params, AdamMoments& moments) {
  if (gradients.size() != params.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        gradients.size(), " gradients for ", params.size(), " parameters"));
  }
  for (size_t k = 0; k < params.size(); ++k) {
    if (gradients[k].rows() != params[k].rows() ||
        gradients[k].cols() != params[k].cols()) {
      return absl::InvalidArgumentError(
          absl::StrCat("gradient ", k, " shape does not match its parameter"));
    }
    if (!gradients[k].allFinite()) {
      return absl::InvalidArgumentError(
          absl::StrCat("gradient ", k, " is not finite"));
    }
  }
  ++moments.step;
  for (size_t k = 0; k < params.size(); ++k) {
    params[k] -= StepFor(options, gradients[k], params[k], moments, k);
  }
  return absl::OkStatus();
}

absl::StatusOr<RowMatrix> AdamUpdate(const AdamOptions& options,
                                     const RowMatrix& gradient,
                                     const RowMatrix& param,
                                     AdamMoments& moments) {
  if (gradient.rows() != param.rows() || gradient.cols() != param.cols()) {
    return absl::InvalidArgumentError("gradient shape does not match parameter");
  }
  if (!gradient.allFinite()) {
    return absl::InvalidArgumentError("gradient is not finite");
  }
  ++moments.step;
  return StepFor(options, gradient, param, moments, 0);
}

}  // namespace ldpgraph
