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

#ifndef LDPGRAPH_CHECKPOINT_H_
#define LDPGRAPH_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>

#include "absl/status/statusor.h"
#include "ldpgraph/model.h"

namespace ldpgraph {

inline constexpr int kCheckpointVersion = 1;

uint64_t ModelConfigHash(const ModelConfig& config);

// Text checkpoint: versioned header, config hash, then every weight tensor
// and the parameter optimizer moments as hex floats (exact round trip). The
// adjacency optimizer state is not stored.
absl::Status SaveCheckpoint(const ModelState& state, const ModelConfig& config,
                            const std::filesystem::path& path);

// Fails if the file was written for a different configuration.
absl::StatusOr<ModelState> LoadCheckpoint(const ModelConfig& config,
                                          const std::filesystem::path& path);

}  // namespace ldpgraph

#endif  // LDPGRAPH_CHECKPOINT_H_
