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

#include "hybridfl/topology.h"

#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

#include "hybridfl/errors.h"

namespace hybridfl {
namespace {

TEST(ApportionTest, ProportionalWithMinimum) {
  const std::vector<double> w{1.0, 1.0, 2.0};
  EXPECT_EQ(ApportionLargestRemainder(w, 8, 0), (std::vector<std::size_t>{2, 2, 4}));
  const std::vector<double> skew{100.0, 0.001};
  const auto parts = ApportionLargestRemainder(skew, 10, 1);
  EXPECT_EQ(parts[1], 1u);
  EXPECT_EQ(parts[0] + parts[1], 10u);
  EXPECT_THROW(ApportionLargestRemainder(w, 2, 1), DomainError);
}

TEST(ApportionTest, TiesGoToLowerIndex) {
  const std::vector<double> w{1.0, 1.0, 1.0};
  EXPECT_EQ(ApportionLargestRemainder(w, 4, 0), (std::vector<std::size_t>{2, 1, 1}));
}

TEST(SampleRegionPopulationsTest, SumsToNWithNonEmptyRegions) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto sizes = SampleRegionPopulations(15, 3, Gaussian{5.0, 1.5}, seed);
    ASSERT_EQ(sizes.size(), 3u);
    EXPECT_EQ(std::accumulate(sizes.begin(), sizes.end(), 0), 15);
    for (int s : sizes) EXPECT_GE(s, 1);
  }
  EXPECT_THROW(SampleRegionPopulations(2, 3, Gaussian{5.0, 1.5}, 1), ConfigError);
}

TEST(PartitionGaussianTest, CoversDatasetExactly) {
  const auto parts = PartitionGaussian(1503, 15, 100.0, 30.0, 4);
  EXPECT_EQ(std::accumulate(parts.begin(), parts.end(), std::size_t{0}), 1503u);
  for (auto p : parts) EXPECT_GE(p, 1u);
  EXPECT_THROW(PartitionGaussian(10, 15, 100.0, 30.0, 4), ConfigError);
}

TEST(PartitionLabelSkewTest, AffinityShareLandsOnCongruentClients) {
  std::vector<int> labels(20000);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i % 10);
  const auto owner = PartitionLabelSkew(labels, 50, 0.75, 2);
  int congruent = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (owner[i] % 10 == labels[i]) ++congruent;
  }
  // 0.75 directly, plus 1/10 of the uniform remainder.
  const double share = static_cast<double>(congruent) / labels.size();
  EXPECT_NEAR(share, 0.75 + 0.25 * 0.1, 0.01);
}

TEST(PartitionLabelSkewTest, NeedsACongruentClient) {
  const std::vector<int> labels{0, 7};
  EXPECT_THROW(PartitionLabelSkew(labels, 5, 0.75, 1), ConfigError);
  EXPECT_NO_THROW(PartitionLabelSkew(labels, 5, 0.0, 1));
}

TEST(BuildTopologyTest, RegionsAndProfiles) {
  SimConfig c;
  const Topology t = BuildTopology(c, {}, 1503);
  EXPECT_EQ(t.num_regions(), 3);
  EXPECT_EQ(t.num_clients(), 15);
  std::size_t covered = 0;
  for (int r = 0; r < t.num_regions(); ++r) {
    for (int id : t.regions[static_cast<std::size_t>(r)]) {
      EXPECT_EQ(t.clients[static_cast<std::size_t>(id)].region, r);
    }
    covered += t.RegionDataSize(r);
  }
  EXPECT_EQ(covered, 1503u);
  for (const auto& client : t.clients) {
    EXPECT_GT(client.speed_ghz, 0.0);
    EXPECT_GT(client.bandwidth_mhz, 0.0);
    EXPECT_GE(client.dropout, 0.0);
    EXPECT_LE(client.dropout, 1.0);
    EXPECT_DOUBLE_EQ(client.reliability(), 1.0 - client.dropout);
  }
  EXPECT_EQ(t, BuildTopology(c, {}, 1503));
}

TEST(BuildTopologyTest, ExplicitRegionsAndDropoutLaws) {
  SimConfig c;
  c.n = 20;
  c.m = 2;
  c.region_sizes = {11, 9};
  c.region_dropout = {Gaussian{0.9, 0.0}, Gaussian{0.1, 0.0}};
  const Topology t = BuildTopology(c, {}, 2000);
  EXPECT_EQ(t.regions[0].size(), 11u);
  EXPECT_EQ(t.regions[1].size(), 9u);
  EXPECT_DOUBLE_EQ(t.clients[0].dropout, 0.9);
  EXPECT_DOUBLE_EQ(t.clients[19].dropout, 0.1);
}

TEST(BuildTopologyTest, DropoutDrawsDoNotDependOnPartition) {
  SimConfig a;
  SimConfig b = a;
  b.dataset.partition_size = Gaussian{80.0, 10.0};
  const Topology ta = BuildTopology(a, {}, 1503);
  const Topology tb = BuildTopology(b, {}, 1503);
  for (std::size_t k = 0; k < ta.clients.size(); ++k) {
    EXPECT_EQ(ta.clients[k].dropout, tb.clients[k].dropout);
    EXPECT_EQ(ta.clients[k].speed_ghz, tb.clients[k].speed_ghz);
  }
}

}  // namespace
}  // namespace hybridfl
