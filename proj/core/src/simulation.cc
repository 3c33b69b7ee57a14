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

#include "hybridfl/simulation.h"

#include <filesystem>
#include <string>

#include "hybridfl/errors.h"
#include "hybridfl/rng.h"

namespace hybridfl {
namespace {

Dataset MakeDataset(const SimConfig& config, bool& used_fallback) {
  const auto& spec = config.dataset;
  const std::uint64_t seed = DeriveSeed(config.seed, "dataset");
  used_fallback = false;
  switch (spec.kind) {
    case DatasetKind::kAerofoil:
      if (!spec.path.empty() && std::filesystem::exists(spec.path)) return LoadAerofoil(spec.path);
      if (!spec.synthetic_fallback) {
        throw IoError("aerofoil data file '" + spec.path + "' not found and fallback disabled");
      }
      used_fallback = true;
      return SynthesizeRegression(spec.samples, spec.features, spec.noise_std, seed);
    case DatasetKind::kSyntheticRegression:
      return SynthesizeRegression(spec.samples, spec.features, spec.noise_std, seed);
    case DatasetKind::kSyntheticClassification:
      return SynthesizeClassification(spec.samples, spec.features, spec.classes,
                                      spec.noise_std, seed);
  }
  throw ConfigError("unknown dataset kind");
}

}  // namespace

Simulation Simulation::Build(const SimConfig& config) {
  config.Validate();
  Simulation sim;
  sim.config_ = config;
  sim.dataset_ = MakeDataset(config, sim.used_fallback_);
  if (sim.dataset_.size() < static_cast<std::size_t>(config.n)) {
    throw ConfigError("dataset has fewer samples than clients");
  }

  std::vector<int> labels;
  if (config.dataset.partition == PartitionKind::kLabelSkew) labels = sim.dataset_.Labels();
  sim.topology_ = BuildTopology(config, labels, sim.dataset_.size());

  sim.timing_ = TimingParams{config.msize_bits, config.br_mbps * 1e6, config.snr, config.bps,
                             config.cpb, config.tau, config.p_trans, config.p_comp_base};
  const double mean_partition =
      static_cast<double>(sim.dataset_.size()) / static_cast<double>(config.n);
  sim.t_lim_ = StragglerLimit(mean_partition, config.speed_ghz.mean, config.speed_ghz.stddev,
                              config.bandwidth_mhz.mean, config.bandwidth_mhz.stddev,
                              sim.timing_);

  for (const auto& client : sim.topology_.clients) {
    if (client.samples.empty()) {
      throw ConfigError("client " + std::to_string(client.id) + " holds no samples");
    }
    sim.shards_.push_back(sim.dataset_.Subset(client.samples));
    sim.client_sizes_.push_back(client.samples.size());
    ClientCost cost;
    cost.train_s = TrainTime(static_cast<double>(client.samples.size()), config.tau, config.bps,
                             config.cpb, client.speed_ghz);
    cost.comm_s = CommTime(config.msize_bits, client.bandwidth_mhz, config.snr);
    cost.completion_s = cost.train_s + cost.comm_s;
    cost.energy_j = DeviceEnergy(cost.comm_s, cost.train_s, client.speed_ghz, config.p_trans,
                                 config.p_comp_base);
    sim.costs_.push_back(cost);
  }

  sim.arch_.input = sim.dataset_.dim();
  sim.arch_.hidden = config.dataset.hidden;
  if (sim.dataset_.task == TaskKind::kClassification) {
    sim.arch_.output = sim.dataset_.num_classes;
    sim.loss_ = LossKind::kNll;
  } else {
    sim.arch_.output = 1;
    sim.loss_ = LossKind::kMse;
  }
  sim.initial_params_ = InitializeParams(sim.arch_, config.seed);
  return sim;
}

double Simulation::CloudEdgeSeconds(ProtocolKind kind) const {
  if (kind == ProtocolKind::kFedAvg) return 0.0;
  return CloudEdgeTime(config_.msize_bits, config_.m, config_.br_mbps * 1e6,
                       config_.parallel_backhaul);
}

double Simulation::DropoutDraw(int round, int client) const {
  const std::uint64_t bits = DeriveSeed(config_.seed, "world/dropout",
                                        {static_cast<std::uint64_t>(round),
                                         static_cast<std::uint64_t>(client)});
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace hybridfl
