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

#include "ldpgraph/random.h"

#include <bit>
#include <limits>

namespace ldpgraph {

uint64_t Rng::UniformInt(uint64_t bound) {
  // Rejection sampling keeps the draw exactly uniform.
  const uint64_t limit =
      std::numeric_limits<uint64_t>::max() -
      std::numeric_limits<uint64_t>::max() % bound;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t DeriveSeed(uint64_t root, std::initializer_list<uint64_t> parts) {
  uint64_t h = Mix64(root);
  for (uint64_t part : parts) h = Mix64(h ^ Mix64(part));
  return h;
}

uint64_t SubstreamSeed(uint64_t root, uint64_t user, StreamTag tag) {
  return DeriveSeed(root, {user, static_cast<uint64_t>(tag)});
}

uint64_t HashString(std::string_view text) {
  // FNV-1a.
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t HashDouble(double value) {
  if (value == 0.0) value = 0.0;  // fold -0.0
  return std::bit_cast<uint64_t>(value);
}

}  // namespace ldpgraph
