// Copyright 2026 The pmest Authors.
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

#include "pmest/rng.h"

#include <set>

#include "gtest/gtest.h"

namespace pmest {
namespace {

TEST(RngTest, SameSeedSameSequence) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(a.Normal(), b.Normal());
    EXPECT_EQ(a.Gamma(3.0, 2.0), b.Gamma(3.0, 2.0));
  }
}

TEST(RngTest, DeriveIgnoresParentDraws) {
  Rng parent(7);
  const double first = parent.Derive(3).Uniform(0, 1);
  for (int i = 0; i < 10; ++i) parent.Uniform(0, 1);
  EXPECT_EQ(parent.Derive(3).Uniform(0, 1), first);
  EXPECT_EQ(parent.Derive(3).seed(), Rng(7).Derive(3).seed());
}

TEST(RngTest, DerivedStreamsAreDistinct) {
  const Rng root(2020);
  std::set<std::uint64_t> seeds;
  for (std::uint64_t s = 0; s < 1000; ++s) seeds.insert(root.Derive(s).seed());
  EXPECT_EQ(seeds.size(), 1000u);
  EXPECT_NE(Rng(1).Derive(0).seed(), Rng(2).Derive(0).seed());
}

TEST(RngTest, MixSeedIsSplitMix64) {
  // First output of the reference SplitMix64 generator seeded with 0.
  EXPECT_EQ(MixSeed(0), 0xe220a8397b1dcdafULL);
}

TEST(RngTest, DistributionMoments) {
  Rng rng(1);
  const int n = 200000;
  double g = 0.0, u = 0.0, b = 0.0;
  std::uint64_t idx_max = 0;
  for (int i = 0; i < n; ++i) {
    g += rng.Gamma(2.5, 4.0);
    u += rng.Uniform(-1.0, 3.0);
    b += rng.Bernoulli(0.3) ? 1.0 : 0.0;
    idx_max = std::max(idx_max, rng.Index(5));
  }
  EXPECT_NEAR(g / n, 10.0, 0.05);
  EXPECT_NEAR(u / n, 1.0, 0.01);
  EXPECT_NEAR(b / n, 0.3, 0.005);
  EXPECT_EQ(idx_max, 4u);
}

}  // namespace
}  // namespace pmest
