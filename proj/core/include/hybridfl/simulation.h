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

#ifndef HYBRIDFL_SIMULATION_H_
#define HYBRIDFL_SIMULATION_H_

#include <cstddef>
#include <span>
#include <vector>

#include "hybridfl/config.h"
#include "hybridfl/dataset.h"
#include "hybridfl/model.h"
#include "hybridfl/simclock.h"
#include "hybridfl/topology.h"

namespace hybridfl {

// Per-client round costs. They depend only on the client profile, so they
// are computed once per world.
struct ClientCost {
  double comm_s = 0.0;
  double train_s = 0.0;
  double completion_s = 0.0;  // comm_s + train_s
  double energy_j = 0.0;      // full local round
};

// The immutable simulated MEC world: dataset, topology, client shards and
// costs, the model family and the shared initial model. Protocols read it
// concurrently; nothing in it changes after Build().
class Simulation {
 public:
  static Simulation Build(const SimConfig& config);

  const SimConfig& config() const { return config_; }
  const Dataset& dataset() const { return dataset_; }
  const Topology& topology() const { return topology_; }
  const Dataset& shard(int client) const { return shards_[static_cast<std::size_t>(client)]; }
  const ClientCost& cost(int client) const { return costs_[static_cast<std::size_t>(client)]; }
  std::span<const std::size_t> client_sizes() const { return client_sizes_; }
  const TimingParams& timing() const { return timing_; }
  double t_lim() const { return t_lim_; }
  // Cloud-edge transfer time for one round; 0 for FedAvg.
  double CloudEdgeSeconds(ProtocolKind kind) const;
  const Architecture& arch() const { return arch_; }
  LossKind loss() const { return loss_; }
  const ModelParams& initial_params() const { return initial_params_; }
  bool used_synthetic_fallback() const { return used_fallback_; }

  // Uniform [0, 1) draw that decides whether `client` drops out of round
  // `round`. Keyed by world seed, round and client only, so every protocol
  // faces the same availability pattern.
  double DropoutDraw(int round, int client) const;

 private:
  SimConfig config_;
  Dataset dataset_;
  Topology topology_;
  std::vector<Dataset> shards_;
  std::vector<ClientCost> costs_;
  std::vector<std::size_t> client_sizes_;
  TimingParams timing_;
  double t_lim_ = 0.0;
  Architecture arch_;
  LossKind loss_ = LossKind::kMse;
  ModelParams initial_params_;
  bool used_fallback_ = false;
};

}  // namespace hybridfl

#endif  // HYBRIDFL_SIMULATION_H_
