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
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "hybridfl/errors.h"
#include "hybridfl/rng.h"

namespace hybridfl {

std::size_t Topology::RegionDataSize(int region) const {
  std::size_t total = 0;
  for (int id : regions.at(static_cast<std::size_t>(region))) {
    total += clients[static_cast<std::size_t>(id)].samples.size();
  }
  return total;
}

std::vector<std::size_t> ApportionLargestRemainder(std::span<const double> weights,
                                                   std::size_t total,
                                                   std::size_t min_each) {
  const std::size_t n = weights.size();
  if (n == 0) {
    if (total != 0) throw DomainError("cannot apportion a positive total over zero parts");
    return {};
  }
  if (total < n * min_each) throw DomainError("total too small for the per-part minimum");
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(sum > 0.0)) throw DomainError("apportionment weights must have a positive sum");

  std::vector<std::size_t> parts(n);
  std::vector<double> remainder(n);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double quota = weights[i] / sum * static_cast<double>(total);
    parts[i] = static_cast<std::size_t>(std::floor(quota));
    remainder[i] = quota - static_cast<double>(parts[i]);
    assigned += parts[i];
  }
  // Floating error can push the floors one over the total.
  while (assigned > total) {
    auto it = std::max_element(parts.begin(), parts.end());
    --*it;
    --assigned;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < total; k = (k + 1) % n, ++assigned) ++parts[order[k]];

  // Raise any part below the minimum by borrowing from the largest part.
  for (std::size_t i = 0; i < n; ++i) {
    while (parts[i] < min_each) {
      auto donor = std::max_element(parts.begin(), parts.end());
      --*donor;
      ++parts[i];
    }
  }
  return parts;
}

std::vector<int> SampleRegionPopulations(int n, int m, Gaussian population,
                                         std::uint64_t seed) {
  if (m < 1 || m > n) throw ConfigError("need 1 <= m <= n to build regions");
  if (population.mean <= 0.0 || population.stddev < 0.0) {
    throw ConfigError("region population distribution must have mean > 0");
  }
  Rng rng = Substream(seed, "topology/regions");
  std::vector<double> draws(static_cast<std::size_t>(m));
  for (double& d : draws) d = SamplePositiveGaussian(population.mean, population.stddev, rng);
  auto parts = ApportionLargestRemainder(draws, static_cast<std::size_t>(n), 1);
  return {parts.begin(), parts.end()};
}

std::vector<std::size_t> PartitionGaussian(std::size_t total, int n, double mean,
                                           double stddev, std::uint64_t seed) {
  if (n < 1) throw ConfigError("need at least one client to partition data");
  if (total < static_cast<std::size_t>(n)) {
    throw ConfigError("dataset has " + std::to_string(total) + " samples for " +
                      std::to_string(n) + " clients; every client needs one");
  }
  if (mean <= 0.0 || stddev < 0.0) throw ConfigError("partition size distribution must have mean > 0");
  Rng rng = Substream(seed, "topology/partition");
  std::vector<double> draws(static_cast<std::size_t>(n));
  for (double& d : draws) d = SamplePositiveGaussian(mean, stddev, rng);
  return ApportionLargestRemainder(draws, total, 1);
}

std::vector<int> PartitionLabelSkew(std::span<const int> labels, int n,
                                    double affinity, std::uint64_t seed) {
  if (labels.empty()) return {};
  if (n < 1) throw ConfigError("need at least one client to partition data");
  if (!(affinity >= 0.0 && affinity <= 1.0)) throw ConfigError("affinity must lie in [0, 1]");
  constexpr int kModulus = 10;
  // Clients per residue class.
  std::vector<std::vector<int>> congruent(kModulus);
  for (int k = 0; k < n; ++k) congruent[static_cast<std::size_t>(k % kModulus)].push_back(k);

  Rng rng = Substream(seed, "topology/label_skew");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> any_client(0, n - 1);
  std::vector<int> owner(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int residue = ((labels[i] % kModulus) + kModulus) % kModulus;
    const auto& pool = congruent[static_cast<std::size_t>(residue)];
    if (affinity > 0.0 && pool.empty()) {
      throw ConfigError("no client id is congruent to label " + std::to_string(labels[i]) +
                        " mod 10; need n >= 10 for a label-skewed partition");
    }
    if (affinity > 0.0 && unit(rng) < affinity) {
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      owner[i] = pool[pick(rng)];
    } else {
      owner[i] = any_client(rng);
    }
  }
  return owner;
}

Topology BuildTopology(const SimConfig& config, std::span<const int> labels,
                       std::size_t dataset_size) {
  config.Validate();
  Topology topo;
  topo.dataset_size = dataset_size;

  std::vector<int> sizes = config.region_sizes.empty()
                               ? SampleRegionPopulations(config.n, config.m,
                                                         config.population, config.seed)
                               : config.region_sizes;
  topo.regions.resize(sizes.size());
  topo.clients.resize(static_cast<std::size_t>(config.n));
  int next_id = 0;
  for (std::size_t r = 0; r < sizes.size(); ++r) {
    for (int i = 0; i < sizes[r]; ++i) {
      topo.regions[r].push_back(next_id);
      auto& c = topo.clients[static_cast<std::size_t>(next_id)];
      c.id = next_id;
      c.region = static_cast<int>(r);
      ++next_id;
    }
  }

  Rng speed_rng = Substream(config.seed, "topology/speed");
  Rng bw_rng = Substream(config.seed, "topology/bandwidth");
  Rng dr_rng = Substream(config.seed, "topology/dropout");
  for (auto& c : topo.clients) {
    c.speed_ghz = SamplePositiveGaussian(config.speed_ghz.mean, config.speed_ghz.stddev, speed_rng);
    c.bandwidth_mhz = SamplePositiveGaussian(config.bandwidth_mhz.mean,
                                             config.bandwidth_mhz.stddev, bw_rng);
    const Gaussian law = config.region_dropout.empty()
                             ? config.dropout
                             : config.region_dropout[static_cast<std::size_t>(c.region)];
    double dr = law.mean;
    if (law.stddev > 0.0) dr = std::normal_distribution<double>(law.mean, law.stddev)(dr_rng);
    c.dropout = std::clamp(dr, 0.0, 1.0);
  }

  if (config.dataset.partition == PartitionKind::kLabelSkew) {
    if (labels.size() != dataset_size) throw ConfigError("label-skewed partition needs one label per sample");
    auto owner = PartitionLabelSkew(labels, config.n, config.dataset.affinity, config.seed);
    for (std::size_t i = 0; i < owner.size(); ++i) {
      topo.clients[static_cast<std::size_t>(owner[i])].samples.push_back(i);
    }
  } else {
    auto parts = PartitionGaussian(dataset_size, config.n, config.dataset.partition_size.mean,
                                   config.dataset.partition_size.stddev, config.seed);
    std::size_t begin = 0;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      auto& samples = topo.clients[k].samples;
      samples.resize(parts[k]);
      std::iota(samples.begin(), samples.end(), begin);
      begin += parts[k];
    }
  }
  return topo;
}

}  // namespace hybridfl
