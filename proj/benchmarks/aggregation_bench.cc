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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "hybridfl/aggregation.h"

namespace hybridfl {
namespace {

void BM_RegionalAggregate(benchmark::State& state) {
  const auto clients = static_cast<std::size_t>(state.range(0));
  const Eigen::Index dim = state.range(1);
  std::mt19937_64 gen(1);
  std::vector<Eigen::VectorXd> models(clients, Eigen::VectorXd::Random(dim));
  std::vector<const Eigen::VectorXd*> slots;
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < clients; ++i) {
    slots.push_back(i % 3 == 0 ? &models[i] : nullptr);
    sizes.push_back(50 + gen() % 100);
  }
  const Eigen::VectorXd cache = Eigen::VectorXd::Zero(dim);
  for (auto _ : state) benchmark::DoNotOptimize(RegionalAggregate(slots, cache, sizes));
}
BENCHMARK(BM_RegionalAggregate)->Args({5, 385})->Args({50, 50890});

void BM_CloudAggregate(benchmark::State& state) {
  const auto regions = static_cast<std::size_t>(state.range(0));
  const Eigen::Index dim = state.range(1);
  const std::vector<Eigen::VectorXd> regional(regions, Eigen::VectorXd::Random(dim));
  std::vector<double> edc(regions);
  for (std::size_t r = 0; r < regions; ++r) edc[r] = static_cast<double>(100 + r);
  const Eigen::VectorXd previous = Eigen::VectorXd::Zero(dim);
  for (auto _ : state) benchmark::DoNotOptimize(CloudAggregate(regional, edc, previous));
}
BENCHMARK(BM_CloudAggregate)->Args({3, 385})->Args({10, 50890});

}  // namespace
}  // namespace hybridfl
