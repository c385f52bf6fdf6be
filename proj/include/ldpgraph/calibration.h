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

#ifndef LDPGRAPH_CALIBRATION_H_
#define LDPGRAPH_CALIBRATION_H_

#include <vector>

#include "absl/status/statusor.h"
#include "ldpgraph/adjacency_matrix.h"
#include "ldpgraph/matrix.h"

namespace ldpgraph {

enum class SmoothingNormalization {
  // w_ij = 1 / (|N(i)| |N(j)|)
  kDegreeProduct,
  // w_ij = 1 / sqrt(|N(i)| |N(j)|)
  kSymmetricSqrt,
};

struct SmoothingOptions {
  bool add_self_loops = true;
  SmoothingNormalization normalization = SmoothingNormalization::kDegreeProduct;
};

// Sparse neighbor-averaging operator S with (S X)_i = sum_{j in N(i)} w_ij x_j.
// Neighborhoods are the rows of a binary adjacency, plus self-loops unless
// disabled.
class SmoothingOperator {
 public:
  static SmoothingOperator FromAdjacency(const BitMatrix& adjacency,
                                         const SmoothingOptions& options = {});
  // Neighborhoods from a continuous adjacency: j in N(i) iff a_ij >= threshold.
  static SmoothingOperator FromThreshold(const RowMatrix& adjacency,
                                         double threshold,
                                         const SmoothingOptions& options = {});
  static SmoothingOperator FromLists(const std::vector<std::vector<int>>& lists,
                                     const SmoothingOptions& options = {});

  int num_nodes() const { return static_cast<int>(degree_.size()); }
  const std::vector<int>& degrees() const { return degree_; }

  // Fails if some node has no neighbors (only possible without self-loops).
  absl::Status CheckDegrees() const;

  // One smoothing step.
  RowMatrix Apply(const RowMatrix& x) const;
  // S^T x, for backpropagation.
  RowMatrix ApplyTranspose(const RowMatrix& x) const;

 private:
  SmoothingOperator(std::vector<std::vector<int>> lists,
                    const SmoothingOptions& options);

  std::vector<int> row_begin_;
  std::vector<int> cols_;
  std::vector<double> weights_;
  std::vector<int> degree_;
};

// Applies `hops` smoothing steps to the noisy features. hops = 0 returns the
// input unchanged.
absl::StatusOr<RowMatrix> SmoothFeatures(const RowMatrix& features,
                                         const SmoothingOperator& op, int hops);

// Applies `hops` smoothing steps to per-node class distributions,
// renormalizing every row to sum 1 after each step.
absl::StatusOr<RowMatrix> SmoothLabels(const RowMatrix& probs,
                                       const SmoothingOperator& op, int hops);

// Relaxed adjacency with every entry kept in [0, 1].
class CalibratedAdjacency {
 public:
  CalibratedAdjacency() = default;
  static CalibratedAdjacency FromBinary(const BitMatrix& adjacency);
  // Fails unless every entry of `values` lies in [0, 1].
  static absl::StatusOr<CalibratedAdjacency> FromValues(RowMatrix values);

  const RowMatrix& values() const { return values_; }
  int num_nodes() const { return static_cast<int>(values_.rows()); }
  double L1Norm() const { return values_.sum(); }

  // values <- clamp(soft_threshold(values - step, threshold), 0, 1).
  void ProximalUpdate(const RowMatrix& step, double threshold);

 private:
  explicit CalibratedAdjacency(RowMatrix values) : values_(std::move(values)) {}

  RowMatrix values_;
};

// Exact minimizer of ||noisy - A||_F^2 + lambda * ||A||_1 over [0, 1] entries:
// elementwise soft-threshold at lambda / 2, then projection onto [0, 1].
absl::StatusOr<CalibratedAdjacency> ProxL1(const RowMatrix& noisy,
                                           double lambda);
absl::StatusOr<CalibratedAdjacency> ProxL1(const BitMatrix& noisy,
                                           double lambda);

struct StructurePenalty {
  double value = 0;
  // Gradient of the smooth (Frobenius) part only; the L1 part is handled by a
  // proximal step.
  RowMatrix gradient;
};

// lambda1 * ||noisy - A||_F^2 + lambda2 * ||A||_1.
absl::StatusOr<StructurePenalty> ComputeStructurePenalty(
    const RowMatrix& noisy, const CalibratedAdjacency& calibrated,
    double lambda1, double lambda2);

// Adds 2 * lambda1 * (A - noisy) to `gradient`.
void AddFidelityGradient(const RowMatrix& noisy,
                         const CalibratedAdjacency& calibrated, double lambda1,
                         RowMatrix& gradient);

}  // namespace ldpgraph

#endif  // LDPGRAPH_CALIBRATION_H_
