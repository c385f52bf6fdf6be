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

#include <cmath>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace ldpgraph {
namespace {

using ::ldpgraph::testing::StatusIs;
using ::testing::DoubleNear;

// Dense smoothing matrix built directly from neighbor sets with self-loops:
// W_ij = 1 / (|N(i)| |N(j)|) for j in N(i).
RowMatrix DenseSmoother(const std::vector<std::vector<int>>& lists, bool sqrt_norm) {
  const int n = static_cast<int>(lists.size());
  std::vector<std::vector<bool>> member(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    member[i][i] = true;
    for (int j : lists[i]) member[i][j] = true;
  }
  std::vector<int> degree(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) degree[i] += member[i][j];
  }
  RowMatrix w = RowMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!member[i][j]) continue;
      const double product = static_cast<double>(degree[i]) * degree[j];
      w(i, j) = sqrt_norm ? 1 / std::sqrt(product) : 1 / product;
    }
  }
  return w;
}

// Minimizes (a - x)^2 + lambda * |x| over x in [0, 1] by ternary search.
double BruteForceProx(double a, double lambda) {
  auto f = [&](double x) { return (a - x) * (a - x) + lambda * std::abs(x); };
  double lo = 0, hi = 1;
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (f(m1) <= f(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return (lo + hi) / 2;
}

double ProxObjective(const RowMatrix& noisy, const RowMatrix& a, double lambda) {
  return (noisy - a).squaredNorm() + lambda * a.cwiseAbs().sum();
}

TEST(SmoothFeaturesTest, SelfLoopOnlyIsIdentity) {
  const SmoothingOperator op = SmoothingOperator::FromLists({{}, {}});
  RowMatrix x(2, 3);
  x << 1, 2, 3, 4, 5, 6;
  EXPECT_EQ(*SmoothFeatures(x, op, 3), x);
}

TEST(SmoothFeaturesTest, TwoNodeHandExample) {
  const SmoothingOperator op = SmoothingOperator::FromLists({{1}, {0}});
  RowMatrix x(2, 1);
  x << 1, 3;
  absl::StatusOr<RowMatrix> out = SmoothFeatures(x, op, 1);
  ASSERT_OK(out);
  EXPECT_DOUBLE_EQ((*out)(0, 0), 1.0);  // 1/4 + 3/4
  EXPECT_DOUBLE_EQ((*out)(1, 0), 1.0);
}

TEST(SmoothFeaturesTest, ZeroStepsReturnsInputExactly) {
  Rng rng(1);
  const SmoothingOperator op = SmoothingOperator::FromLists({{1, 2}, {0}, {}});
  const RowMatrix x = testing::RandomMatrix(3, 4, -1, 1, rng);
  EXPECT_EQ(*SmoothFeatures(x, op, 0), x);
}

TEST(SmoothFeaturesTest, MatchesDenseMatrixPower) {
  Rng rng(2);
  for (bool sqrt_norm : {false, true}) {
    const Graph g = testing::RandomGraph(12, 4, 2, 0.25, 3);
    SmoothingOptions options;
    if (sqrt_norm) options.normalization = SmoothingNormalization::kSymmetricSqrt;
    const SmoothingOperator op =
        SmoothingOperator::FromAdjacency(ToBitMatrix(g), options);
    const RowMatrix w = DenseSmoother(g.adjacency, sqrt_norm);
    const RowMatrix x = testing::RandomMatrix(12, 4, -1, 1, rng);
    const RowMatrix expected = w * (w * (w * x));
    const RowMatrix actual = *SmoothFeatures(x, op, 3);
    EXPECT_LT((actual - expected).cwiseAbs().maxCoeff(), 1e-14);
    const RowMatrix back = op.ApplyTranspose(x);
    EXPECT_LT((back - w.transpose() * x).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(SmoothFeaturesTest, IsLinear) {
  Rng rng(4);
  const Graph g = testing::RandomGraph(15, 3, 2, 0.2, 5);
  const SmoothingOperator op = SmoothingOperator::FromAdjacency(ToBitMatrix(g));
  for (int trial = 0; trial < 20; ++trial) {
    const RowMatrix x = testing::RandomMatrix(15, 3, -2, 2, rng);
    const RowMatrix y = testing::RandomMatrix(15, 3, -2, 2, rng);
    const double a = 4 * rng.Uniform() - 2, b = 4 * rng.Uniform() - 2;
    const RowMatrix lhs = *SmoothFeatures(a * x + b * y, op, 2);
    const RowMatrix rhs = a * *SmoothFeatures(x, op, 2) + b * *SmoothFeatures(y, op, 2);
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(SmoothFeaturesTest, IsolatedNodeWithoutSelfLoopsFails) {
  SmoothingOptions options;
  options.add_self_loops = false;
  const SmoothingOperator op = SmoothingOperator::FromLists({{1}, {0}, {}}, options);
  EXPECT_THAT(SmoothFeatures(RowMatrix::Ones(3, 1), op, 1),
              StatusIs(absl::StatusCode::kFailedPrecondition));
  EXPECT_OK(SmoothFeatures(RowMatrix::Ones(3, 1), op, 0));
}

TEST(SmoothFeaturesTest, RejectsShapeMismatch) {
  const SmoothingOperator op = SmoothingOperator::FromLists({{}, {}});
  EXPECT_FALSE(SmoothFeatures(RowMatrix::Ones(3, 1), op, 1).ok());
}

TEST(SmoothLabelsTest, ZeroStepsIsIdentity) {
  const SmoothingOperator op = SmoothingOperator::FromLists({{1}, {0}});
  RowMatrix p(2, 2);
  p << 0.3, 0.7, 0.9, 0.1;
  EXPECT_EQ(*SmoothLabels(p, op, 0), p);
}

TEST(SmoothLabelsTest, UniformIsAFixedPoint) {
  const Graph g = testing::RandomGraph(20, 1, 1, 0.2, 6);
  const SmoothingOperator op = SmoothingOperator::FromAdjacency(ToBitMatrix(g));
  const RowMatrix p = RowMatrix::Constant(20, 4, 0.25);
  const RowMatrix out = *SmoothLabels(p, op, 3);
  EXPECT_LT((out - p).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SmoothLabelsTest, PathGraphMatchesHandStep) {
  const std::vector<std::vector<int>> path = {{1}, {0, 2}, {1}};
  const SmoothingOperator op = SmoothingOperator::FromLists(path);
  const RowMatrix p = RowMatrix::Identity(3, 3);
  RowMatrix expected = DenseSmoother(path, false) * p;
  for (int i = 0; i < 3; ++i) expected.row(i) /= expected.row(i).sum();
  // Node 0: neighbors {0, 1} with degrees 2 and 3 -> (1/4, 1/6, 0) -> (0.6, 0.4, 0).
  EXPECT_NEAR(expected(0, 0), 0.6, 1e-15);
  EXPECT_NEAR(expected(0, 1), 0.4, 1e-15);
  const RowMatrix out = *SmoothLabels(p, op, 1);
  EXPECT_LT((out - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SmoothLabelsTest, RejectsNegativeProbabilities) {
  const SmoothingOperator op = SmoothingOperator::FromLists({{}, {}});
  RowMatrix p(2, 2);
  p << 0.5, 0.5, -0.1, 1.1;
  EXPECT_THAT(SmoothLabels(p, op, 1), StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(SmoothingOperatorTest, FromThresholdKeepsEntriesAtOrAbove) {
  RowMatrix a(3, 3);
  a << 0.0, 0.5, 0.49, 0.7, 0.0, 0.0, 0.0, 1.0, 0.2;
  const SmoothingOperator op = SmoothingOperator::FromThreshold(a, 0.5);
  EXPECT_EQ(op.degrees(), (std::vector<int>{2, 2, 2}));
}

TEST(ProxL1Test, ClosedFormEntries) {
  RowMatrix one = RowMatrix::Ones(1, 1);
  EXPECT_DOUBLE_EQ(ProxL1(one, 0.5)->values()(0, 0), 0.75);
  EXPECT_DOUBLE_EQ(ProxL1(one, 3)->values()(0, 0), 0.0);
  EXPECT_FALSE(ProxL1(one, -1).ok());
}

TEST(ProxL1Test, MatchesBruteForceMinimizer) {
  Rng rng(7);
  for (double lambda : {0.1, 0.8, 3.0}) {
    for (int trial = 0; trial < 20; ++trial) {
      const RowMatrix noisy = testing::RandomMatrix(5, 5, -0.5, 1.5, rng);
      absl::StatusOr<CalibratedAdjacency> prox = ProxL1(noisy, lambda);
      ASSERT_OK(prox);
      for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
          EXPECT_THAT(prox->values()(i, j),
                      DoubleNear(BruteForceProx(noisy(i, j), lambda), 1e-6));
        }
      }
    }
  }
}

TEST(ProxL1Test, BeatsRandomPerturbations) {
  Rng rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const RowMatrix noisy = testing::RandomMatrix(4, 4, 0, 1, rng);
    const double lambda = 2 * rng.Uniform();
    const RowMatrix best = ProxL1(noisy, lambda)->values();
    const double objective = ProxObjective(noisy, best, lambda);
    for (int k = 0; k < 1000; ++k) {
      RowMatrix candidate = best + testing::RandomMatrix(4, 4, -0.2, 0.2, rng);
      candidate = candidate.cwiseMax(0.0).cwiseMin(1.0);
      EXPECT_LE(objective, ProxObjective(noisy, candidate, lambda) + 1e-12);
    }
  }
}

TEST(ProxL1Test, BinaryInputProperties) {
  Rng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const BitMatrix a = testing::RandomBitMatrix(8, 8, 0.3, rng);
    const RowMatrix dense = a.ToDense();
    const double lambda = 1.99 * rng.Uniform() + 0.001;
    const RowMatrix out = ProxL1(a, lambda)->values();
    EXPECT_TRUE((out.array() <= dense.array()).all());
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) {
        if (!a.Get(i, j)) EXPECT_EQ(out(i, j), 0.0);
      }
    }
    if (a.Count() > 0) EXPECT_LT(out.sum(), dense.sum());
  }
}

TEST(ProxL1Test, ZeroLambdaIsIdentityOnUnitInterval) {
  Rng rng(10);
  const RowMatrix a = testing::RandomMatrix(6, 6, 0, 1, rng);
  EXPECT_EQ(ProxL1(a, 0)->values(), a);
}

TEST(CalibratedAdjacencyTest, FromValuesChecksRange) {
  EXPECT_OK(CalibratedAdjacency::FromValues(RowMatrix::Constant(2, 2, 0.5)));
  EXPECT_FALSE(CalibratedAdjacency::FromValues(RowMatrix::Constant(2, 2, 1.5)).ok());
  EXPECT_FALSE(CalibratedAdjacency::FromValues(RowMatrix::Constant(2, 2, -0.1)).ok());
}

TEST(CalibratedAdjacencyTest, ProximalUpdateStaysInUnitInterval) {
  Rng rng(11);
  CalibratedAdjacency a =
      CalibratedAdjacency::FromBinary(testing::RandomBitMatrix(10, 10, 0.3, rng));
  for (int step = 0; step < 50; ++step) {
    a.ProximalUpdate(testing::RandomMatrix(10, 10, -0.5, 0.5, rng), 0.01);
    ASSERT_TRUE((a.values().array() >= 0).all());
    ASSERT_TRUE((a.values().array() <= 1).all());
  }
}

TEST(CalibratedAdjacencyTest, ProximalUpdateSoftThresholdsAfterStep) {
  RowMatrix v(1, 3);
  v << 0.5, 0.5, 0.5;
  CalibratedAdjacency a = *CalibratedAdjacency::FromValues(v);
  RowMatrix step(1, 3);
  step << 0.1, -0.2, 0.45;
  a.ProximalUpdate(step, 0.1);
  EXPECT_NEAR(a.values()(0, 0), 0.3, 1e-15);
  EXPECT_NEAR(a.values()(0, 1), 0.6, 1e-15);
  EXPECT_NEAR(a.values()(0, 2), 0.0, 1e-15);
}

TEST(StructurePenaltyTest, AtNoisyPointOnlyL1Remains) {
  Rng rng(12);
  const BitMatrix bits = testing::RandomBitMatrix(5, 5, 0.4, rng);
  const RowMatrix noisy = bits.ToDense();
  absl::StatusOr<StructurePenalty> penalty = ComputeStructurePenalty(
      noisy, CalibratedAdjacency::FromBinary(bits), 0.3, 0.7);
  ASSERT_OK(penalty);
  EXPECT_DOUBLE_EQ(penalty->value, 0.7 * noisy.sum());
  EXPECT_EQ(penalty->gradient.cwiseAbs().maxCoeff(), 0.0);
}

TEST(StructurePenaltyTest, ZeroCoefficientsGiveZero) {
  const RowMatrix noisy = RowMatrix::Identity(3, 3);
  absl::StatusOr<StructurePenalty> penalty = ComputeStructurePenalty(
      noisy, *CalibratedAdjacency::FromValues(RowMatrix::Constant(3, 3, 0.4)), 0, 0);
  ASSERT_OK(penalty);
  EXPECT_EQ(penalty->value, 0.0);
  EXPECT_EQ(penalty->gradient.cwiseAbs().maxCoeff(), 0.0);
}

TEST(StructurePenaltyTest, TwoByTwoHandExample) {
  RowMatrix noisy(2, 2), calibrated(2, 2);
  noisy << 1, 0, 0, 0;
  calibrated << 0.5, 0, 0, 0;
  absl::StatusOr<StructurePenalty> penalty = ComputeStructurePenalty(
      noisy, *CalibratedAdjacency::FromValues(calibrated), 1, 1);
  ASSERT_OK(penalty);
  EXPECT_DOUBLE_EQ(penalty->value, 0.75);
  EXPECT_DOUBLE_EQ(penalty->gradient(0, 0), -1.0);
}

TEST(StructurePenaltyTest, FidelityGradientIsTwiceLambdaTimesDifference) {
  Rng rng(13);
  const RowMatrix noisy = testing::RandomBitMatrix(6, 6, 0.5, rng).ToDense();
  const CalibratedAdjacency a =
      *CalibratedAdjacency::FromValues(testing::RandomMatrix(6, 6, 0, 1, rng));
  RowMatrix gradient = RowMatrix::Zero(6, 6);
  AddFidelityGradient(noisy, a, 0.25, gradient);
  EXPECT_EQ(gradient, (0.5 * (a.values() - noisy)).eval());
  EXPECT_EQ(ComputeStructurePenalty(noisy, a, 0.25, 0)->gradient, gradient);
}

TEST(StructurePenaltyTest, RejectsShapeMismatch) {
  EXPECT_FALSE(ComputeStructurePenalty(
                   RowMatrix::Zero(2, 2),
                   *CalibratedAdjacency::FromValues(RowMatrix::Zero(3, 3)), 1, 1)
                   .ok());
}

}  // namespace
}  // namespace ldpgraph
