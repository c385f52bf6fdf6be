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

#ifndef LDPGRAPH_ADAM_H_
#define LDPGRAPH_ADAM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpgraph/matrix.h"

namespace ldpgraph {

struct AdamOptions {
  double learning_rate = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // L2 term added to the gradient before the moment update.
  double weight_decay = 0.0;
};

// First and second moment estimates, one pair per parameter tensor.
struct AdamMoments {
  std::vector<RowMatrix> first;
  std::vector<RowMatrix> second;
  int64_t step = 0;
};

// One bias-corrected Adam update of every tensor in `params`. Moments are
// lazily sized on the first call.
absl::Status AdamStep(const AdamOptions& options,
                      std::span<const RowMatrix> gradients,
                      std::vector<RowMatrix>& params, AdamMoments& moments);

// Single-tensor variant that returns the step instead of applying it, for
// parameters with their own update rule. `param` is only read for weight
// decay.
absl::StatusOr<RowMatrix> AdamUpdate(const AdamOptions& options,
                                     const RowMatrix& gradient,
                                     const RowMatrix& param,
                                     AdamMoments& moments);

}  // namespace ldpgraph

#endif  // LDPGRAPH_ADAM_H_
