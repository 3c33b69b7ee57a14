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

#include "hybridfl/aggregation.h"

#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "hybridfl/errors.h"

namespace hybridfl {
namespace {

Eigen::VectorXd Vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

TEST(RegionalAggregateTest, FillsMissingSlotsWithCache) {
  const Eigen::VectorXd cache = Vec({10.0, 10.0});
  const Eigen::VectorXd w0 = Vec({1.0, 2.0});
  const Eigen::VectorXd w2 = Vec({3.0, 4.0});
  const std::vector<const Eigen::VectorXd*> fresh{&w0, nullptr, &w2};
  const std::vector<std::size_t> sizes{1, 2, 1};
  const Eigen::VectorXd got = RegionalAggregate(fresh, cache, sizes);
  EXPECT_TRUE(got.isApprox(Vec({(1.0 + 20.0 + 3.0) / 4.0, (2.0 + 20.0 + 4.0) / 4.0})));
}

TEST(RegionalAggregateTest, NoSubmissionsKeepsCache) {
  const Eigen::VectorXd cache = Vec({0.5, -1.5});
  const std::vector<const Eigen::VectorXd*> fresh{nullptr, nullptr};
  const std::vector<std::size_t> sizes{3, 7};
  EXPECT_TRUE(RegionalAggregate(fresh, cache, sizes).isApprox(cache));
}

TEST(EdcTest, CountsSubmittedSamples) {
  const std::vector<std::size_t> sizes{5, 7, 11, 13};
  const std::vector<int> submitted{1, 3};
  EXPECT_EQ(Edc(submitted, sizes), 20u);
  EXPECT_EQ(Edc({}, sizes), 0u);
  const std::vector<double> edc{20.0, 0.0, 4.0};
  EXPECT_DOUBLE_EQ(EdcTotal(edc), 24.0);
}

TEST(CloudAggregateTest, WeightsByCoverage) {
  const std::vector<Eigen::VectorXd> regional{Vec({1.0}), Vec({4.0}), Vec({100.0})};
  const std::vector<double> edc{1.0, 2.0, 0.0};
  EXPECT_NEAR(CloudAggregate(regional, edc, Vec({-7.0}))[0], 3.0, 1e-12);
}

TEST(CloudAggregateTest, ZeroCoverageKeepsPreviousModel) {
  const std::vector<Eigen::VectorXd> regional{Vec({1.0, 2.0}), Vec({3.0, 4.0})};
  const std::vector<double> edc{0.0, 0.0};
  const Eigen::VectorXd previous = Vec({9.0, 8.0});
  EXPECT_EQ(CloudAggregate(regional, edc, previous), previous);
}

TEST(FlattenWeightsTest, SumsToOneAndMatchesTwoLevelAverage) {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> size_dist(1, 50);
  std::uniform_int_distribution<int> count_dist(1, 6);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = count_dist(gen);
    std::vector<std::vector<std::size_t>> sizes(static_cast<std::size_t>(m));
    std::vector<std::vector<Eigen::VectorXd>> models(static_cast<std::size_t>(m));
    std::vector<double> edc(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) {
      const int k = count_dist(gen);
      for (int i = 0; i < k; ++i) {
        sizes[r].push_back(static_cast<std::size_t>(size_dist(gen)));
        models[r].push_back(Eigen::VectorXd::NullaryExpr(3, [&] { return normal(gen); }));
      }
      edc[r] = static_cast<double>(size_dist(gen)) * (r == 0 || gen() % 3 ? 1.0 : 0.0);
    }
    const auto gamma = FlattenWeights(edc, sizes);
    double total = 0.0;
    Eigen::VectorXd flat = Eigen::VectorXd::Zero(3);
    std::vector<Eigen::VectorXd> regional;
    for (int r = 0; r < m; ++r) {
      std::vector<const Eigen::VectorXd*> fresh;
      for (std::size_t i = 0; i < models[r].size(); ++i) {
        total += gamma[r][i];
        flat += gamma[r][i] * models[r][i];
        fresh.push_back(&models[r][i]);
      }
      regional.push_back(RegionalAggregate(fresh, Eigen::VectorXd::Zero(3), sizes[r]));
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    const Eigen::VectorXd two_level = CloudAggregate(regional, edc, Eigen::VectorXd::Zero(3));
    EXPECT_LE((two_level - flat).norm(), 1e-10 * (1.0 + flat.norm()));
  }
}

TEST(FlattenWeightsTest, ZeroCoverageThrows) {
  const std::vector<double> edc{0.0};
  EXPECT_THROW(FlattenWeights(edc, {{1, 2}}), DomainError);
}

TEST(WeightedAverageTest, SampleWeighted) {
  const Eigen::VectorXd a = Vec({0.0});
  const Eigen::VectorXd b = Vec({3.0});
  const std::vector<const Eigen::VectorXd*> models{&a, &b};
  const std::vector<std::size_t> sizes{2, 1};
  EXPECT_NEAR(WeightedAverage(models, sizes)[0], 1.0, 1e-15);
}

}  // namespace
}  // namespace hybridfl
