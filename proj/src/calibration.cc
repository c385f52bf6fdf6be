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

#include "ldpgraph/calibration.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace ldpgraph {

SmoothingOperator::SmoothingOperator(std::vector<std::vector<int>> lists,
                                     const SmoothingOptions& options) {
  const int n = static_cast<int>(lists.size());
  if (options.add_self_loops) {
    for (int i = 0; i < n; ++i) {
      auto& list = lists[i];
      auto it = std::lower_bound(list.begin(), list.end(), i);
      if (it == list.end() || *it != i) list.insert(it, i);
    }
  }
  degree_.resize(n);
  row_begin_.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    degree_[i] = static_cast<int>(lists[i].size());
    row_begin_[i + 1] = row_begin_[i] + degree_[i];
  }
  cols_.reserve(row_begin_[n]);
  weights_.reserve(row_begin_[n]);
  for (int i = 0; i < n; ++i) {
    for (int j : lists[i]) {
      const double product = static_cast<double>(degree_[i]) * degree_[j];
      cols_.push_back(j);
      weights_.push_back(options.normalization ==
                                 SmoothingNormalization::kDegreeProduct
                             ? 1.0 / product
                             : 1.0 / std::sqrt(product));
    }
  }
}

SmoothingOperator SmoothingOperator::FromAdjacency(
    const BitMatrix& adjacency, const SmoothingOptions& options) {
  std::vector<std::vector<int>> lists(adjacency.rows());
  for (int i = 0; i < adjacency.rows(); ++i) lists[i] = adjacency.RowIndices(i);
  return SmoothingOperator(std::move(lists), options);
}

SmoothingOperator SmoothingOperator::FromThreshold(
    const RowMatrix& adjacency, double threshold,
    const SmoothingOptions& options) {
  std::vector<std::vector<int>> lists(adjacency.rows());
  for (Eigen::Index i = 0; i < adjacency.rows(); ++i) {
    for (Eigen::Index j = 0; j < adjacency.cols(); ++j) {
      if (adjacency(i, j) >= threshold) lists[i].push_back(static_cast<int>(j));
    }
  }
  return SmoothingOperator(std::move(lists), options);
}

SmoothingOperator SmoothingOperator::FromLists(
    const std::vector<std::vector<int>>& lists,
    const SmoothingOptions& options) {
  std::vector<std::vector<int>> sorted = lists;
  for (auto& list : sorted) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return SmoothingOperator(std::move(sorted), options);
}

absl::Status SmoothingOperator::CheckDegrees() const {
  for (int i = 0; i < num_nodes(); ++i) {
    if (degree_[i] == 0) {
      return absl::FailedPreconditionError(absl::StrCat(
          "node ", i, " has no neighbors and self-loops are disabled"));
    }
  }
  return absl::OkStatus();
}

RowMatrix SmoothingOperator::Apply(const RowMatrix& x) const {
  RowMatrix out = RowMatrix::Zero(x.rows(), x.cols());
  for (int i = 0; i < num_nodes(); ++i) {
    for (int k = row_begin_[i]; k < row_begin_[i + 1]; ++k) {
      out.row(i) += weights_[k] * x.row(cols_[k]);
    }
  }
  return out;
}

RowMatrix SmoothingOperator::ApplyTranspose(const RowMatrix& x) const {
  RowMatrix out = RowMatrix::Zero(x.rows(), x.cols());
  for (int i = 0; i < num_nodes(); ++i) {
    for (int k = row_begin_[i]; k < row_begin_[i + 1]; ++k) {
      out.row(cols_[k]) += weights_[k] * x.row(i);
    }
  }
  return out;
}

absl::StatusOr<RowMatrix> SmoothFeatures(const RowMatrix& features,
                                         const SmoothingOperator& op,
                                         int hops) {
  if (hops < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("smoothing steps must be nonnegative, got ", hops));
  }
  if (features.rows() != op.num_nodes()) {
    return absl::InvalidArgumentError(
        absl::StrCat("features have ", features.rows(), " rows, operator has ",
                     op.num_nodes(), " nodes"));
  }
  if (hops == 0) return features;
  absl::Status degrees = op.CheckDegrees();
  if (!degrees.ok()) return degrees;
  RowMatrix x = features;
  for (int step = 0; step < hops; ++step) x = op.Apply(x);
  return x;
}

absl::StatusOr<RowMatrix> SmoothLabels(const RowMatrix& probs,
                                       const SmoothingOperator& op, int hops) {
  if (hops < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("smoothing steps must be nonnegative, got ", hops));
  }
  if (probs.rows() != op.num_nodes()) {
    return absl::InvalidArgumentError(
        absl::StrCat("probabilities have ", probs.rows(),
                     " rows, operator has ", op.num_nodes(), " nodes"));
  }
  if ((probs.array() < 0).any()) {
    return absl::InvalidArgumentError("negative class probability");
  }
  if (hops == 0) return probs;
  absl::Status degrees = op.CheckDegrees();
  if (!degrees.ok()) return degrees;
  RowMatrix p = probs;
  for (int step = 0; step < hops; ++step) {
    p = op.Apply(p);
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      const double total = p.row(i).sum();
      if (total > 0) p.row(i) /= total;
    }
  }
  return p;
}

CalibratedAdjacency CalibratedAdjacency::FromBinary(const BitMatrix& adjacency) {
  return CalibratedAdjacency(adjacency.ToDense());
}

absl::StatusOr<CalibratedAdjacency> CalibratedAdjacency::FromValues(
    RowMatrix values) {
  if (!(values.array() >= 0.0).all() || !(values.array() <= 1.0).all()) {
    return absl::InvalidArgumentError("calibrated adjacency entries must lie in [0, 1]");
  }
  return CalibratedAdjacency(std::move(values));
}

void CalibratedAdjacency::ProximalUpdate(const RowMatrix& step,
                                         double threshold) {
  values_ = (values_ - step).array().unaryExpr([threshold](double a) {
    double shrunk = a > threshold    ? a - threshold
                    : a < -threshold ? a + threshold
                                     : 0.0;
    return std::clamp(shrunk, 0.0, 1.0);
  });
}

absl::StatusOr<CalibratedAdjacency> ProxL1(const RowMatrix& noisy,
                                           double lambda) {
  if (!(lambda >= 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("lambda must be nonnegative, got ", lambda));
  }
  const double half = lambda / 2.0;
  RowMatrix out = noisy.array().unaryExpr([half](double a) {
    const double shrunk = a > half ? a - half : a < -half ? a + half : 0.0;
    return std::clamp(shrunk, 0.0, 1.0);
  });
  return CalibratedAdjacency::FromValues(std::move(out));
}

absl::StatusOr<CalibratedAdjacency> ProxL1(const BitMatrix& noisy,
                                           double lambda) {
  return ProxL1(noisy.ToDense(), lambda);
}

absl::StatusOr<StructurePenalty> ComputeStructurePenalty(
    const RowMatrix& noisy, const CalibratedAdjacency& calibrated,
    double lambda1, double lambda2) {
  const RowMatrix& a = calibrated.values();
  if (noisy.rows() != a.rows() || noisy.cols() != a.cols()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "noisy adjacency is ", noisy.rows(), "x", noisy.cols(),
        ", calibrated is ", a.rows(), "x", a.cols()));
  }
  StructurePenalty penalty;
  penalty.value = lambda1 * (noisy - a).squaredNorm() +
                  lambda2 * a.cwiseAbs().sum();
  penalty.gradient = RowMatrix::Zero(a.rows(), a.cols());
  AddFidelityGradient(noisy, calibrated, lambda1, penalty.gradient);
  return penalty;
}

void AddFidelityGradient(const RowMatrix& noisy,
                         const CalibratedAdjacency& calibrated, double lambda1,
                         RowMatrix& gradient) {
  if (lambda1 == 0.0) return;
  gradient.noalias() += (2.0 * lambda1) * (calibrated.values() - noisy);
}

}  // namespace ldpgraph
