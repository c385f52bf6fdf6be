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

#include <cmath>
#include <set>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace ldpgraph {
namespace {

TEST(Mix64Test, MatchesSplitMix64ReferenceOutput) {
  // First output of the reference SplitMix64 generator seeded with 0.
  EXPECT_EQ(Mix64(0), 0xe220a8397b1dcdafULL);
}

TEST(HashStringTest, MatchesFnv1aReferenceValues) {
  EXPECT_EQ(HashString(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(HashString("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(HashDoubleTest, FoldsNegativeZero) {
  EXPECT_EQ(HashDouble(0.0), HashDouble(-0.0));
  EXPECT_NE(HashDouble(1.0), HashDouble(7.0));
}

TEST(DeriveSeedTest, DependsOnEveryPartAndOrder) {
  const uint64_t base = DeriveSeed(1, {2, 3});
  EXPECT_EQ(base, DeriveSeed(1, {2, 3}));
  EXPECT_NE(base, DeriveSeed(1, {3, 2}));
  EXPECT_NE(base, DeriveSeed(2, {2, 3}));
  EXPECT_NE(base, DeriveSeed(1, {2}));
}

TEST(SubstreamSeedTest, DistinctAcrossUsersAndTags) {
  std::set<uint64_t> seeds;
  for (uint64_t user = 0; user < 100; ++user) {
    seeds.insert(SubstreamSeed(42, user, StreamTag::kAdjacency));
    seeds.insert(SubstreamSeed(42, user, StreamTag::kFeatures));
  }
  EXPECT_EQ(seeds.size(), 200u);
}

TEST(RngTest, UniformStaysInUnitInterval) {
  Rng rng(7);
  double sum = 0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  // Mean of U(0,1) has standard deviation sqrt(1/12 / n).
  EXPECT_NEAR(sum / kDraws, 0.5, 4 * std::sqrt(1.0 / 12 / kDraws));
}

TEST(RngTest, UniformIntCoversRangeEvenly) {
  Rng rng(11);
  std::vector<int> counts(6, 0);
  constexpr int kDraws = 60000;
  for (int i = 0; i < kDraws; ++i) {
    const uint64_t x = rng.UniformInt(6);
    ASSERT_LT(x, 6u);
    ++counts[x];
  }
  const double sigma = std::sqrt(kDraws * (1.0 / 6) * (5.0 / 6));
  for (int c : counts) EXPECT_NEAR(c, kDraws / 6.0, 4 * sigma);
}

TEST(RngTest, SameSeedSameSequence) {
  Rng a(99), b(99);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.Uniform(), b.Uniform());
}

}  // namespace
}  // namespace ldpgraph
