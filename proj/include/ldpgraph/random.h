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

#ifndef LDPGRAPH_RANDOM_H_
#define LDPGRAPH_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace ldpgraph {

// Tags that separate independent random streams derived from one root seed.
enum class StreamTag : uint64_t {
  kAdjacency = 1,
  kFeatures = 2,
  kSplit = 3,
  kInit = 4,
  kDropout = 5,
  kGrid = 6,
  kCollection = 7,
  kTraining = 8,
};

// Seeded generator with platform-independent draws. The standard
// distributions are implementation-defined, so every draw the library relies
// on for reproducibility goes through these members instead.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound). bound must be positive.
  uint64_t UniformInt(uint64_t bound);

  bool Bernoulli(double p) { return Uniform() < p; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer.
uint64_t Mix64(uint64_t x);

// Hashes an ordered list of words into one seed.
uint64_t DeriveSeed(uint64_t root, std::initializer_list<uint64_t> parts);

// Seed for the stream owned by `tag` of `user` under `root`. Streams for
// different users or tags are independent by construction, so per-user work
// may run in any order.
uint64_t SubstreamSeed(uint64_t root, uint64_t user, StreamTag tag);

uint64_t HashString(std::string_view text);
uint64_t HashDouble(double value);

}  // namespace ldpgraph

#endif  // LDPGRAPH_RANDOM_H_
