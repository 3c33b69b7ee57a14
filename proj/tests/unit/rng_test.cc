/*
 * Copyright 2026 The HybridFL Simulator Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hybridfl/rng.h"

#include <set>

#include <gtest/gtest.h>

namespace hybridfl {
namespace {

TEST(DeriveSeedTest, DeterministicAndNameSensitive) {
  EXPECT_EQ(DeriveSeed(1, "a", {1, 2}), DeriveSeed(1, "a", {1, 2}));
  EXPECT_NE(DeriveSeed(1, "a", {1, 2}), DeriveSeed(1, "b", {1, 2}));
  EXPECT_NE(DeriveSeed(1, "a", {1, 2}), DeriveSeed(1, "a", {2, 1}));
  EXPECT_NE(DeriveSeed(1, "a", {1, 2}), DeriveSeed(2, "a", {1, 2}));
  EXPECT_NE(DeriveSeed(1, "a", {}), DeriveSeed(1, "a", {0}));
}

TEST(DeriveSeedTest, NoCollisionsAcrossRoundGrid) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t t = 0; t < 200; ++t) {
    for (std::uint64_t r = 0; r < 10; ++r) seen.insert(DeriveSeed(42, "select", {t, r}));
  }
  EXPECT_EQ(seen.size(), 2000u);
}

TEST(SubstreamTest, IndependentOfOtherStreamsDraws) {
  Rng a = Substream(9, "x");
  Rng other = Substream(9, "y");
  for (int i = 0; i < 1000; ++i) other();
  Rng b = Substream(9, "x");
  EXPECT_EQ(a(), b());
}

TEST(SamplePositiveGaussianTest, AlwaysPositive) {
  Rng rng = Substream(3, "g");
  for (int i = 0; i < 10000; ++i) EXPECT_GT(SamplePositiveGaussian(0.2, 0.3, rng), 0.0);
}

TEST(SamplePositiveGaussianTest, ZeroStdReturnsMean) {
  Rng rng = Substream(3, "g");
  EXPECT_EQ(SamplePositiveGaussian(0.5, 0.0, rng), 0.5);
}

}  // namespace
}  // namespace hybridfl
