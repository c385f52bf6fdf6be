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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/strings/str_cat.h"

namespace ldpgraph {

absl::StatusOr<PrivacyBudget> PrivacyBudget::Create(
    double eps_edge, double eps_feature, const BudgetOptions& options) {
  const bool edge_ok = std::isfinite(eps_edge) &&
                       (eps_edge > 0 ||
                        (options.allow_zero_edge_budget && eps_edge == 0));
  if (!edge_ok) {
    return absl::InvalidArgumentError(
        absl::StrCat("edge budget must be positive and finite, got ", eps_edge));
  }
  if (!std::isfinite(eps_feature) || eps_feature <= 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "feature budget must be positive and finite, got ", eps_feature));
  }
  return PrivacyBudget(eps_edge, eps_feature);
}

absl::StatusOr<double> FlipProbability(double eps_edge) {
  if (std::isnan(eps_edge) || eps_edge < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("edge budget must be nonnegative, got ", eps_edge));
  }
  if (std::isinf(eps_edge)) return 0.0;
  return 1.0 / (1.0 + std::exp(eps_edge));
}

absl::StatusOr<std::vector<uint8_t>> ObfuscateAdjacencyList(
    std::span<const uint8_t> bits, double eps_edge, Rng& rng) {
  absl::StatusOr<double> p = FlipProbability(eps_edge);
  if (!p.ok()) return p.status();
  std::vector<uint8_t> out(bits.size());
  for (size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] > 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("bit ", j, " has non-binary value ", int{bits[j]}));
    }
    const bool flip = rng.Uniform() < *p;
    out[j] = flip ? 1 - bits[j] : bits[j];
  }
  return out;
}

double LdpRatioBound(double eps_edge) {
  if (std::isinf(eps_edge)) return eps_edge;
  const double e = std::exp(eps_edge);
  const double retain = e / (1.0 + e);
  const double flip = 1.0 / (1.0 + e);
  return retain / flip;
}

absl::StatusOr<double> GroupPrivacyCost(double eps_edge, int k) {
  if (k < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("group size must be at least 1, got ", k));
  }
  return k * eps_edge;
}

double TotalBudget(const PrivacyBudget& budget) {
  return budget.eps_edge() + budget.eps_feature();
}

int ChooseSampledDims(double eps_feature, int dimension) {
  const double by_budget = std::floor(eps_feature / kSingleDimensionBudget);
  const double capped = std::min<double>(dimension, by_budget);
  return std::max(1, static_cast<int>(capped));
}

absl::StatusOr<MultiBitConfig> MultiBitConfig::Create(int dimension,
                                                      int sampled_dims,
                                                      FeatureRange range) {
  if (dimension < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension must be positive, got ", dimension));
  }
  if (sampled_dims < 1 || sampled_dims > dimension) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sampled dims must lie in [1, ", dimension, "], got ", sampled_dims));
  }
  if (!(range.min < range.max)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "feature range needs min < max, got [", range.min, ", ", range.max, "]"));
  }
  return MultiBitConfig(dimension, sampled_dims, range);
}

double EncodePlusProbability(double x, const MultiBitConfig& config,
                             double eps_feature) {
  const double e = std::exp(eps_feature / config.sampled_dims());
  const double t =
      (x - config.range().min) / (config.range().max - config.range().min);
  return 1.0 / (e + 1.0) + t * (e - 1.0) / (e + 1.0);
}

absl::StatusOr<std::vector<int8_t>> MultiBitEncode(std::span<const double> x,
                                                   const MultiBitConfig& config,
                                                   double eps_feature,
                                                   Rng& rng) {
  const int dim = config.dimension();
  if (static_cast<int>(x.size()) != dim) {
    return absl::InvalidArgumentError(absl::StrCat(
        "feature vector has ", x.size(), " entries, config expects ", dim));
  }
  for (int j = 0; j < dim; ++j) {
    if (!(x[j] >= config.range().min && x[j] <= config.range().max)) {
      return absl::OutOfRangeError(absl::StrCat(
          "feature ", j, " = ", x[j], " outside [", config.range().min, ", ",
          config.range().max, "]"));
    }
  }
  // Partial Fisher-Yates: the first m slots hold a uniform m-subset.
  std::vector<int> index(dim);
  std::iota(index.begin(), index.end(), 0);
  std::vector<int8_t> encoded(dim, 0);
  for (int k = 0; k < config.sampled_dims(); ++k) {
    const int pick =
        k + static_cast<int>(rng.UniformInt(static_cast<uint64_t>(dim - k)));
    std::swap(index[k], index[pick]);
    const int j = index[k];
    const double plus = EncodePlusProbability(x[j], config, eps_feature);
    encoded[j] = rng.Uniform() < plus ? 1 : -1;
  }
  return encoded;
}

double RectifierScale(const MultiBitConfig& config, double eps_feature) {
  const double e = std::exp(eps_feature / config.sampled_dims());
  return config.dimension() * (config.range().max - config.range().min) /
         (2.0 * config.sampled_dims()) * (e + 1.0) / (e - 1.0);
}

absl::StatusOr<std::vector<double>> MultiBitRectify(
    std::span<const int8_t> encoded, const MultiBitConfig& config,
    double eps_feature) {
  if (static_cast<int>(encoded.size()) != config.dimension()) {
    return absl::InvalidArgumentError(
        absl::StrCat("encoded vector has ", encoded.size(),
                     " entries, config expects ", config.dimension()));
  }
  const double scale = RectifierScale(config, eps_feature);
  const double center = (config.range().max + config.range().min) / 2.0;
  std::vector<double> out(encoded.size());
  for (size_t j = 0; j < encoded.size(); ++j) {
    if (encoded[j] < -1 || encoded[j] > 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("encoded value ", int{encoded[j]}, " at ", j,
                       " is not in {-1, 0, 1}"));
    }
    out[j] = scale * encoded[j] + center;
  }
  return out;
}

}  // namespace ldpgraph
