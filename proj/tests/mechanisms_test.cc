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

#include "ldpgraph/mechanisms.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace ldpgraph {
namespace {

using ::ldpgraph::testing::IsOkAndHolds;
using ::testing::DoubleEq;
using ::testing::DoubleNear;
using ::testing::Each;
using ::testing::ElementsAre;
using ::testing::Eq;

constexpr double kE = std::numbers::e;

// E[Rec(Enc(x))_j] from the encoder law: coordinate j is sampled with
// probability m/D, then +1 with probability P(x_j), -1 otherwise.
double ExpectedRectified(double x, int dim, int m, FeatureRange r, double eps) {
  const double e = std::exp(eps / m);
  const double plus = 1 / (e + 1) + (x - r.min) / (r.max - r.min) * (e - 1) / (e + 1);
  const double scale = dim * (r.max - r.min) / (2.0 * m) * (e + 1) / (e - 1);
  const double center = (r.max + r.min) / 2;
  const double sampled = static_cast<double>(m) / dim;
  return sampled * (plus * (scale + center) + (1 - plus) * (-scale + center)) +
         (1 - sampled) * center;
}

TEST(FlipProbabilityTest, ClosedForms) {
  EXPECT_THAT(FlipProbability(0), IsOkAndHolds(0.5));
  EXPECT_THAT(FlipProbability(std::log(3.0)), IsOkAndHolds(DoubleNear(0.25, 1e-15)));
  EXPECT_THAT(FlipProbability(7), IsOkAndHolds(DoubleNear(9.1105e-4, 1e-8)));
  EXPECT_THAT(FlipProbability(std::numeric_limits<double>::infinity()),
              IsOkAndHolds(0.0));
}

TEST(FlipProbabilityTest, RejectsNegativeBudget) {
  EXPECT_FALSE(FlipProbability(-0.1).ok());
  EXPECT_FALSE(FlipProbability(std::nan("")).ok());
}

TEST(PrivacyBudgetTest, RequiresPositiveFiniteBudgets) {
  EXPECT_OK(PrivacyBudget::Create(7, 1));
  EXPECT_FALSE(PrivacyBudget::Create(0, 1).ok());
  EXPECT_FALSE(PrivacyBudget::Create(1, 0).ok());
  EXPECT_FALSE(PrivacyBudget::Create(INFINITY, 1).ok());
  BudgetOptions zero;
  zero.allow_zero_edge_budget = true;
  EXPECT_OK(PrivacyBudget::Create(0, 1, zero));
}

TEST(LdpRatioBoundTest, EqualsExpOfBudget) {
  EXPECT_DOUBLE_EQ(LdpRatioBound(1), kE);
  EXPECT_DOUBLE_EQ(LdpRatioBound(0), 1.0);
  EXPECT_NEAR(LdpRatioBound(7), 1096.633158, 1e-6);
  for (double eps : {0.1, 0.5, 2.0, 5.0, 8.7}) {
    EXPECT_NEAR(LdpRatioBound(eps) / std::exp(eps), 1.0, 1e-14);
  }
}

TEST(LdpRatioBoundTest, NeighboringListsStayWithinBound) {
  // For one differing bit, Pr[out | bit] / Pr[out | flipped bit] is q/p or
  // p/q, both within e^eps.
  for (double eps : {0.5, 1.0, 3.0, 7.0}) {
    const double p = *FlipProbability(eps);
    const double q = 1 - p;
    EXPECT_LE(q / p, std::exp(eps) * (1 + 1e-12));
    EXPECT_LE(p / q, std::exp(eps));
  }
}

TEST(GroupPrivacyCostTest, ScalesLinearly) {
  EXPECT_THAT(GroupPrivacyCost(0.5, 3), IsOkAndHolds(1.5));
  EXPECT_THAT(GroupPrivacyCost(1.25, 1), IsOkAndHolds(1.25));
  EXPECT_THAT(GroupPrivacyCost(2, 10), IsOkAndHolds(20.0));
  EXPECT_FALSE(GroupPrivacyCost(1, 0).ok());
}

TEST(TotalBudgetTest, AddsBothBudgets) {
  EXPECT_EQ(TotalBudget(*PrivacyBudget::Create(7, 1)), 8.0);
  EXPECT_EQ(TotalBudget(*PrivacyBudget::Create(0.5, 0.5)), 1.0);
  EXPECT_EQ(TotalBudget(*PrivacyBudget::Create(8.0, 2.0)), 10.0);
}

TEST(ChooseSampledDimsTest, FollowsFloorRuleWithClamps) {
  EXPECT_EQ(ChooseSampledDims(1, 1433), 1);
  EXPECT_EQ(ChooseSampledDims(4.5, 10), 2);
  EXPECT_EQ(ChooseSampledDims(100, 3), 3);
  EXPECT_EQ(ChooseSampledDims(2.18, 10), 1);
  EXPECT_EQ(ChooseSampledDims(6.54, 10), 3);
}

TEST(ObfuscateAdjacencyListTest, PreservesLengthAndBinarity) {
  Rng rng(1);
  std::vector<uint8_t> bits(500);
  for (auto& b : bits) b = rng.Bernoulli(0.1);
  absl::StatusOr<std::vector<uint8_t>> out = ObfuscateAdjacencyList(bits, 1.0, rng);
  ASSERT_OK(out);
  EXPECT_EQ(out->size(), bits.size());
  for (uint8_t b : *out) EXPECT_LE(b, 1);
}

TEST(ObfuscateAdjacencyListTest, RejectsNonBinaryInput) {
  Rng rng(1);
  const std::vector<uint8_t> bits = {0, 2, 1};
  EXPECT_FALSE(ObfuscateAdjacencyList(bits, 1.0, rng).ok());
}

TEST(ObfuscateAdjacencyListTest, LargeBudgetKeepsInput) {
  Rng rng(2);
  std::vector<uint8_t> bits(300);
  for (auto& b : bits) b = rng.Bernoulli(0.5);
  for (int trial = 0; trial < 100; ++trial) {
    EXPECT_THAT(ObfuscateAdjacencyList(bits, 50, rng), IsOkAndHolds(Eq(bits)));
  }
  // Infinite budget composes to the identity.
  absl::StatusOr<std::vector<uint8_t>> once = ObfuscateAdjacencyList(
      bits, std::numeric_limits<double>::infinity(), rng);
  ASSERT_OK(once);
  EXPECT_THAT(ObfuscateAdjacencyList(*once, INFINITY, rng),
              IsOkAndHolds(Eq(bits)));
}

TEST(ObfuscateAdjacencyListTest, AllZeroListOnesMatchBinomialMean) {
  constexpr int kN = 2708;
  constexpr int kTrials = 10000;
  const double p = *FlipProbability(7);
  Rng rng(3);
  const std::vector<uint8_t> zeros(kN, 0);
  double total = 0;
  for (int t = 0; t < kTrials; ++t) {
    const std::vector<uint8_t> out = *ObfuscateAdjacencyList(zeros, 7, rng);
    for (uint8_t b : out) total += b;
  }
  const double mean = kN * p;
  EXPECT_NEAR(mean, 2.467, 1e-3);
  const double sigma = std::sqrt(kN * p * (1 - p) / kTrials);
  EXPECT_NEAR(total / kTrials, mean, 3 * sigma);
}

TEST(ObfuscateAdjacencyListTest, ExpectedOnesIsRetainedPlusAdded) {
  constexpr int kN = 400;
  constexpr int kOnes = 60;
  constexpr int kTrials = 3000;
  const double eps = 2.0;
  const double p = *FlipProbability(eps);
  std::vector<uint8_t> bits(kN, 0);
  for (int j = 0; j < kOnes; ++j) bits[j * 5] = 1;
  Rng rng(4);
  double total = 0;
  for (int t = 0; t < kTrials; ++t) {
    const std::vector<uint8_t> out = *ObfuscateAdjacencyList(bits, eps, rng);
    for (uint8_t b : out) total += b;
  }
  const double mean = kOnes * (1 - p) + (kN - kOnes) * p;
  const double sigma = std::sqrt(kN * p * (1 - p) / kTrials);
  EXPECT_NEAR(total / kTrials, mean, 3 * sigma);
}

TEST(MultiBitConfigTest, ValidatesArguments) {
  EXPECT_OK(MultiBitConfig::Create(5, 5, {0, 1}));
  EXPECT_FALSE(MultiBitConfig::Create(5, 6, {0, 1}).ok());
  EXPECT_FALSE(MultiBitConfig::Create(5, 0, {0, 1}).ok());
  EXPECT_FALSE(MultiBitConfig::Create(0, 1, {0, 1}).ok());
  EXPECT_FALSE(MultiBitConfig::Create(5, 1, {1, 1}).ok());
}

TEST(EncodePlusProbabilityTest, EndpointsAndMidpoint) {
  const MultiBitConfig config = *MultiBitConfig::Create(1, 1, {0, 1});
  EXPECT_NEAR(EncodePlusProbability(0, config, 1), 1 / (kE + 1), 1e-15);
  EXPECT_NEAR(EncodePlusProbability(0, config, 1), 0.2689, 1e-4);
  EXPECT_NEAR(EncodePlusProbability(1, config, 1), kE / (kE + 1), 1e-15);
  EXPECT_NEAR(EncodePlusProbability(1, config, 1), 0.7311, 1e-4);
  EXPECT_NEAR(EncodePlusProbability(0.5, config, 1), 0.5, 1e-15);
}

TEST(MultiBitEncodeTest, ExactlyMCoordinatesAreNonzero) {
  const MultiBitConfig config = *MultiBitConfig::Create(20, 6, {-1, 3});
  Rng rng(5);
  std::vector<double> x(20);
  for (double& v : x) v = -1 + 4 * rng.Uniform();
  for (int trial = 0; trial < 200; ++trial) {
    absl::StatusOr<std::vector<int8_t>> encoded = MultiBitEncode(x, config, 3, rng);
    ASSERT_OK(encoded);
    int nonzero = 0;
    for (int8_t v : *encoded) {
      ASSERT_TRUE(v == -1 || v == 0 || v == 1);
      nonzero += v != 0;
    }
    EXPECT_EQ(nonzero, 6);
  }
}

TEST(MultiBitEncodeTest, SamplesDimensionsUniformly) {
  const MultiBitConfig config = *MultiBitConfig::Create(8, 3, {0, 1});
  const std::vector<double> x(8, 0.5);
  Rng rng(6);
  std::vector<int> hits(8, 0);
  constexpr int kTrials = 40000;
  for (int t = 0; t < kTrials; ++t) {
    const std::vector<int8_t> e = *MultiBitEncode(x, config, 1, rng);
    for (int j = 0; j < 8; ++j) hits[j] += e[j] != 0;
  }
  const double p = 3.0 / 8;
  const double sigma = std::sqrt(kTrials * p * (1 - p));
  for (int h : hits) EXPECT_NEAR(h, kTrials * p, 4 * sigma);
}

TEST(MultiBitEncodeTest, RejectsOutOfRangeInput) {
  const MultiBitConfig config = *MultiBitConfig::Create(2, 1, {0, 1});
  Rng rng(1);
  const std::vector<double> bad = {0.5, 1.5};
  EXPECT_FALSE(MultiBitEncode(bad, config, 1, rng).ok());
  const std::vector<double> short_x = {0.5};
  EXPECT_FALSE(MultiBitEncode(short_x, config, 1, rng).ok());
}

TEST(MultiBitRectifyTest, SingleDimensionValues) {
  const MultiBitConfig config = *MultiBitConfig::Create(1, 1, {0, 1});
  const double scale = 0.5 * (kE + 1) / (kE - 1);
  const std::vector<int8_t> plus = {1}, minus = {-1}, zero = {0};
  EXPECT_THAT(MultiBitRectify(plus, config, 1),
              IsOkAndHolds(ElementsAre(DoubleNear(scale + 0.5, 1e-14))));
  EXPECT_NEAR((*MultiBitRectify(plus, config, 1))[0], 1.5820, 1e-4);
  EXPECT_NEAR((*MultiBitRectify(minus, config, 1))[0], -0.5820, 1e-4);
  EXPECT_THAT(MultiBitRectify(zero, config, 1),
              IsOkAndHolds(ElementsAre(DoubleEq(0.5))));
}

TEST(MultiBitRectifyTest, ZeroMapsToRangeCenter) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 1 + static_cast<int>(rng.UniformInt(30));
    const int m = 1 + static_cast<int>(rng.UniformInt(dim));
    const double lo = -5 + 5 * rng.Uniform();
    const double hi = lo + 0.1 + 5 * rng.Uniform();
    const MultiBitConfig config = *MultiBitConfig::Create(dim, m, {lo, hi});
    const std::vector<int8_t> zeros(dim, 0);
    EXPECT_THAT(*MultiBitRectify(zeros, config, 0.5 + 5 * rng.Uniform()),
                Each(DoubleNear((lo + hi) / 2, 1e-12)));
  }
}

TEST(MultiBitRectifyTest, RejectsBadEncodings) {
  const MultiBitConfig config = *MultiBitConfig::Create(2, 1, {0, 1});
  const std::vector<int8_t> bad = {2, 0};
  EXPECT_FALSE(MultiBitRectify(bad, config, 1).ok());
}

TEST(MultiBitUnbiasednessTest, UpperEndpointExpectationIsOne) {
  const double plus = kE / (kE + 1);
  const double rec_plus = 0.5 * (kE + 1) / (kE - 1) + 0.5;
  const double rec_minus = -0.5 * (kE + 1) / (kE - 1) + 0.5;
  EXPECT_NEAR(plus * rec_plus + (1 - plus) * rec_minus, 1.0, 1e-12);
}

TEST(MultiBitUnbiasednessTest, AnalyticExpectationEqualsInput) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 1 + static_cast<int>(rng.UniformInt(50));
    const int m = 1 + static_cast<int>(rng.UniformInt(dim));
    const FeatureRange range{-2 * rng.Uniform(), 0.5 + 3 * rng.Uniform()};
    const double eps = 0.1 + 10 * rng.Uniform();
    const MultiBitConfig config = *MultiBitConfig::Create(dim, m, range);
    const double x = range.min + (range.max - range.min) * rng.Uniform();
    // Library-side analytic mean built from its own building blocks.
    const double plus = EncodePlusProbability(x, config, eps);
    const double scale = RectifierScale(config, eps);
    const double center = (range.max + range.min) / 2;
    const double library =
        center + static_cast<double>(m) / dim * scale * (2 * plus - 1);
    EXPECT_NEAR(library, x, 1e-12 * std::max(1.0, scale));
    EXPECT_NEAR(ExpectedRectified(x, dim, m, range, eps), x,
                1e-12 * std::max(1.0, scale));
  }
}

TEST(MultiBitUnbiasednessTest, MonteCarloMeanWithinThreeSigma) {
  Rng rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const int dim = 2 + static_cast<int>(rng.UniformInt(6));
    const int m = 1 + static_cast<int>(rng.UniformInt(dim));
    const double eps = 0.5 + 4 * rng.Uniform();
    const MultiBitConfig config = *MultiBitConfig::Create(dim, m, {0, 1});
    std::vector<double> x(dim);
    for (double& v : x) v = rng.Uniform();
    constexpr int kSamples = 20000;
    std::vector<double> sum(dim, 0), sum_sq(dim, 0);
    for (int s = 0; s < kSamples; ++s) {
      const std::vector<double> rec =
          *MultiBitRectify(*MultiBitEncode(x, config, eps, rng), config, eps);
      for (int j = 0; j < dim; ++j) {
        sum[j] += rec[j];
        sum_sq[j] += rec[j] * rec[j];
      }
    }
    for (int j = 0; j < dim; ++j) {
      const double mean = sum[j] / kSamples;
      const double var = sum_sq[j] / kSamples - mean * mean;
      EXPECT_NEAR(mean, x[j], 3.5 * std::sqrt(var / kSamples))
          << "dim=" << dim << " m=" << m << " eps=" << eps << " j=" << j;
    }
  }
}

}  // namespace
}  // namespace ldpgraph
