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

#ifndef HYBRIDFL_TOPOLOGY_H_
#define HYBRIDFL_TOPOLOGY_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hybridfl/config.h"

namespace hybridfl {

// One end device. A client belongs to exactly one region.
struct ClientProfile {
  int id = 0;
  int region = 0;
  std::vector<std::size_t> samples;  // rows of the shared dataset
  double speed_ghz = 0.0;
  double bandwidth_mhz = 0.0;
  double dropout = 0.0;  // per-round drop-out probability, in [0, 1]

  double reliability() const { return 1.0 - dropout; }
  bool operator==(const ClientProfile&) const = default;
};

struct Topology {
  std::vector<std::vector<int>> regions;  // client ids per edge node
  std::vector<ClientProfile> clients;     // indexed by id
  std::size_t dataset_size = 0;

  int num_regions() const { return static_cast<int>(regions.size()); }
  int num_clients() const { return static_cast<int>(clients.size()); }
  // |D^r|.
  std::size_t RegionDataSize(int region) const;
  bool operator==(const Topology&) const = default;
};

// Builds regions, client profiles and the data partition. `labels` is only
// read for label-skewed partitions. Deterministic in (config, seed).
Topology BuildTopology(const SimConfig& config, std::span<const int> labels,
                       std::size_t dataset_size);

// Splits `total` into integer parts proportional to `weights` (largest
// remainder, ties to the lower index) with every part >= `min_each`.
std::vector<std::size_t> ApportionLargestRemainder(std::span<const double> weights,
                                                   std::size_t total,
                                                   std::size_t min_each);

// Region sizes n_r: draws from N(mean, std^2), rescales to sum n, each >= 1.
std::vector<int> SampleRegionPopulations(int n, int m, Gaussian population,
                                         std::uint64_t seed);

// Partition sizes drawn from N(mean, std^2) and rescaled to sum to `total`,
// each >= 1.
std::vector<std::size_t> PartitionGaussian(std::size_t total, int n, double mean,
                                           double stddev, std::uint64_t seed);

// Returns owner[i] = client id holding sample i. With probability `affinity`
// a sample goes to a client whose id is congruent to its label modulo 10
// (uniform among those), otherwise to a uniformly random client.
std::vector<int> PartitionLabelSkew(std::span<const int> labels, int n,
                                    double affinity, std::uint64_t seed);

}  // namespace hybridfl

#endif  // HYBRIDFL_TOPOLOGY_H_
