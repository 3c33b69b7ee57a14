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

#include <benchmark/benchmark.h>

#include "hybridfl/experiment.h"
#include "hybridfl/protocol.h"
#include "hybridfl/simulation.h"

namespace hybridfl {
namespace {

const Simulation& Task1World() {
  static const Simulation sim = Simulation::Build(PresetConfig("task1"));
  return sim;
}

void BM_Round(benchmark::State& state) {
  const auto kind = static_cast<ProtocolKind>(state.range(0));
  const Simulation& sim = Task1World();
  const ProtocolState initial = ProtocolState::Initial(sim);
  int round = 1;
  for (auto _ : state) benchmark::DoNotOptimize(RunRound(kind, sim, initial, round++));
  state.SetLabel(std::string(ProtocolName(kind)));
}
BENCHMARK(BM_Round)->DenseRange(0, 2);

void BM_Task1Run(benchmark::State& state) {
  SimConfig config = PresetConfig("task1");
  config.t_max = 100;
  const Simulation sim = Simulation::Build(config);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        RunProtocol(sim, ProtocolKind::kHybridFL, StopCriterion::MaxRounds()));
  }
}
BENCHMARK(BM_Task1Run)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace hybridfl
