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

#ifndef LDPGRAPH_MECHANISMS_H_
#define LDPGRAPH_MECHANISMS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpgraph/graph.h"
#include "ldpgraph/random.h"

namespace ldpgraph {

// Below this feature budget the multi-bit mechanism perturbs a single
// dimension; each further multiple of it buys one more sampled dimension.
inline constexpr double kSingleDimensionBudget = 2.18;

struct BudgetOptions {
  // Accept eps_edge == 0 (flip probability 1/2). Offers no edge privacy
  // utility and exists for tests only.
  bool allow_zero_edge_budget = false;
};

// Edge budget (adjacency lists) and feature budget of one user.
class PrivacyBudget {
 public:
  static absl::StatusOr<PrivacyBudget> Create(double eps_edge,
                                              double eps_feature,
                                              const BudgetOptions& options = {});

  double eps_edge() const { return eps_edge_; }
  double eps_feature() const { return eps_feature_; }

 private:
  PrivacyBudget(double eps_edge, double eps_feature)
      : eps_edge_(eps_edge), eps_feature_(eps_feature) {}

  double eps_edge_;
  double eps_feature_;
};

// p = 1 / (1 + e^eps). eps may be +infinity (p = 0).
absl::StatusOr<double> FlipProbability(double eps_edge);

// Randomized response: every bit flips independently with
// FlipProbability(eps_edge). Consumes exactly one uniform draw per bit.
absl::StatusOr<std::vector<uint8_t>> ObfuscateAdjacencyList(
    std::span<const uint8_t> bits, double eps_edge, Rng& rng);

// Retain/flip ratio q/p of randomized response; equals e^eps.
double LdpRatioBound(double eps_edge);

// Budget spent protecting k edges at once.
absl::StatusOr<double> GroupPrivacyCost(double eps_edge, int k);

// Composition of the two mechanisms.
double TotalBudget(const PrivacyBudget& budget);

// m = max(1, min(D, floor(eps_feature / 2.18))).
int ChooseSampledDims(double eps_feature, int dimension);

class MultiBitConfig {
 public:
  static absl::StatusOr<MultiBitConfig> Create(int dimension, int sampled_dims,
                                               FeatureRange range);

  int dimension() const { return dimension_; }
  int sampled_dims() const { return sampled_dims_; }
  const FeatureRange& range() const { return range_; }

 private:
  MultiBitConfig(int dimension, int sampled_dims, FeatureRange range)
      : dimension_(dimension), sampled_dims_(sampled_dims), range_(range) {}

  int dimension_;
  int sampled_dims_;
  FeatureRange range_;
};

// Probability that a sampled coordinate with value x encodes to +1.
double EncodePlusProbability(double x, const MultiBitConfig& config,
                             double eps_feature);

// Samples m coordinates uniformly without replacement and encodes each to +1
// or -1; all other coordinates are 0.
absl::StatusOr<std::vector<int8_t>> MultiBitEncode(std::span<const double> x,
                                                   const MultiBitConfig& config,
                                                   double eps_feature, Rng& rng);

// Affine rectifier making the encoded vector an unbiased estimate of x.
absl::StatusOr<std::vector<double>> MultiBitRectify(
    std::span<const int8_t> encoded, const MultiBitConfig& config,
    double eps_feature);

// Multiplier of the encoded value in MultiBitRectify.
double RectifierScale(const MultiBitConfig& config, double eps_feature);

}  // namespace ldpgraph

#endif  // LDPGRAPH_MECHANISMS_H_
