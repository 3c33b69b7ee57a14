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

#ifndef HYBRIDFL_CONFIG_H_
#define HYBRIDFL_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace hybridfl {

enum class ProtocolKind { kHybridFL, kFedAvg, kHierFAVG };

std::string_view ProtocolName(ProtocolKind kind);
ProtocolKind ParseProtocol(std::string_view name);

struct Gaussian {
  double mean = 0.0;
  double stddev = 0.0;

  bool operator==(const Gaussian&) const = default;
};

enum class DatasetKind {
  kAerofoil,                 // UCI airfoil self-noise table, regression
  kSyntheticRegression,      // noisy random linear function
  kSyntheticClassification,  // class-prototype "images", 10 classes
};

enum class PartitionKind {
  kGaussianSizes,  // contiguous shards with N(mean, std^2) sizes
  kLabelSkew,      // sample goes to a client congruent to its label w.p. affinity
};

struct DatasetSpec {
  DatasetKind kind = DatasetKind::kSyntheticRegression;
  std::string path;                 // aerofoil file
  bool synthetic_fallback = true;   // use synthetic data if `path` is missing
  std::size_t samples = 1503;
  int features = 5;
  int classes = 10;
  double noise_std = 0.5;
  PartitionKind partition = PartitionKind::kGaussianSizes;
  Gaussian partition_size{100.0, 30.0};
  double affinity = 0.75;
  std::vector<int> hidden{16, 16};  // hidden layer widths, tanh

  bool operator==(const DatasetSpec&) const = default;
};

// Everything needed to build one simulated MEC world and drive one protocol
// over it. Client speed is in GHz, client bandwidth in MHz, cloud-edge rate
// in Mbps and model size in bits.
struct SimConfig {
  int n = 15;               // clients
  int m = 3;                // edge nodes
  double C = 0.3;           // desired global submission proportion
  int tau = 5;              // local epochs per round
  int t_max = 600;
  double eta = 1e-4;
  std::uint64_t seed = 1;

  Gaussian speed_ghz{0.5, 0.1};
  Gaussian bandwidth_mhz{0.5, 0.1};
  Gaussian dropout{0.3, 0.05};
  Gaussian population{5.0, 1.5};
  // Optional overrides: explicit region sizes and per-region drop-out laws.
  std::vector<int> region_sizes;
  std::vector<Gaussian> region_dropout;

  double snr = 100.0;
  double br_mbps = 1000.0;
  double msize_bits = 4e7;
  double bps = 6 * 8 * 8;
  double cpb = 300.0;
  double p_trans = 0.5;
  double p_comp_base = 0.7;

  ProtocolKind protocol = ProtocolKind::kHybridFL;
  int kappa2 = 10;
  bool parallel_backhaul = false;
  double theta_init = 0.5;
  int theta_window = 0;  // 0 = whole history

  DatasetSpec dataset;

  // Throws ConfigError on the first violated invariant.
  void Validate() const;

  bool operator==(const SimConfig&) const = default;
};

// Flat `key = value` format, '#' starts a comment. Unknown keys are errors.
// Keys are listed in configs/README.md.
void ApplyConfigValue(SimConfig& config, std::string_view key,
                      std::string_view value);
SimConfig ParseConfig(std::istream& in, SimConfig base = {});
SimConfig LoadConfigFile(const std::string& path, SimConfig base = {});

}  // namespace hybridfl

#endif  // HYBRIDFL_CONFIG_H_
