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

#include <benchmark/benchmark.h>

#include "hybridfl/estimator.h"

namespace hybridfl {
namespace {

void BM_EstimateTheta(benchmark::State& state) {
  const int n_r = 10;
  const double C = 0.3;
  RegionHistory history(n_r);
  std::mt19937_64 gen(3);
  for (int64_t i = 0; i < state.range(0); ++i) {
    const int submitted = static_cast<int>(gen() % (n_r + 1));
    history.Append(0.6, ComputeQ(submitted, C, n_r), submitted);
  }
  for (auto _ : state) benchmark::DoNotOptimize(EstimateTheta(history));
}
BENCHMARK(BM_EstimateTheta)->Arg(100)->Arg(600);

void BM_ExpectedSurvivorsMonteCarlo(benchmark::State& state) {
  const std::vector<double> reliabilities{0.9, 0.2, 0.5, 0.7, 0.4, 0.8, 0.3, 0.6};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ExpectedSurvivorsMonteCarlo(reliabilities, 4, 10000, 1));
  }
}
BENCHMARK(BM_ExpectedSurvivorsMonteCarlo);

}  // namespace
}  // namespace hybridfl
