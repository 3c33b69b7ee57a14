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

#ifndef HYBRIDFL_PROTOCOL_H_
#define HYBRIDFL_PROTOCOL_H_

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hybridfl/config.h"
#include "hybridfl/estimator.h"
#include "hybridfl/rng.h"
#include "hybridfl/simulation.h"
#include "hybridfl/topology.h"

namespace hybridfl {

// One edge node's view of a round. `survivors` is simulator ground truth and
// never flows back into the estimator. Invariant:
// submitted ⊆ survivors ⊆ selected, all sorted by client id.
struct RegionRoundState {
  int region = 0;
  std::vector<int> selected;
  std::vector<int> survivors;
  std::vector<int> submitted;
  std::vector<double> completion_s;  // parallel to `survivors`
  double c_r = 0.0;                  // |U_r| / n_r actually invited
  double theta_hat = 0.0;            // NaN for the baselines
  bool clamped = false;
  double q_r = 0.0;                  // |S_r| / (C n_r)
  double edc = 0.0;
};

struct RoundOutcome {
  int round = 0;
  ProtocolKind protocol = ProtocolKind::kHybridFL;
  std::vector<RegionRoundState> regions;
  Eigen::VectorXd global;
  double window_s = 0.0;        // compute window, already capped at T_lim
  double c2e2c_s = 0.0;
  double round_length_s = 0.0;
  std::vector<double> client_energy_j;  // indexed by client id
  int quota = 0;
  bool quota_met = false;
  double edc_total = 0.0;
  bool cloud_aggregated = false;
};

// Everything carried from one round to the next.
struct ProtocolState {
  Eigen::VectorXd global;
  std::vector<Eigen::VectorXd> regional;  // edge models w^r(t-1)
  std::vector<RegionHistory> histories;   // HybridFL only
  int cloud_aggregations = 0;

  static ProtocolState Initial(const Simulation& sim);
};

struct RoundResult {
  RoundOutcome outcome;
  ProtocolState next;
};

struct ExecutionOptions {
  int threads = 1;
};

// Uniform subset of `count` ids without replacement, returned sorted.
std::vector<int> SelectClients(std::span<const int> ids, int count, Rng& rng);

// Each selected client survives independently with probability 1 - dr_k.
std::vector<int> RealizeDropout(std::span<const int> selected,
                                std::span<const ClientProfile> profiles, Rng& rng);
// Same rule with the uniform draw supplied per client id.
std::vector<int> RealizeDropout(std::span<const int> selected,
                                std::span<const ClientProfile> profiles,
                                const std::function<double(int)>& uniform);

// max(1, round_half_up(C n)).
int Quota(double C, int n);

// HybridFL round: slack-factor selection per edge, drop-out, the global
// quota signal, cached regional aggregation and EDC-weighted cloud
// aggregation.
RoundResult RunHybridRound(const Simulation& sim, const ProtocolState& prev, int round,
                           const ExecutionOptions& options = {});

// Cloud-side FedAvg: global uniform selection of round(C n) clients,
// synchronous wait, sample-weighted average of what arrived.
RoundResult RunFedAvgRound(const Simulation& sim, const ProtocolState& prev, int round,
                           const ExecutionOptions& options = {});

// HierFAVG: per-edge selection of round(C n_r) clients, edge aggregation every
// round, cloud aggregation every kappa2 rounds weighted by |D^r| / |D|.
RoundResult RunHierFavgRound(const Simulation& sim, const ProtocolState& prev, int round,
                             int kappa2, const ExecutionOptions& options = {});

RoundResult RunRound(ProtocolKind kind, const Simulation& sim, const ProtocolState& prev,
                     int round, const ExecutionOptions& options = {});

}  // namespace hybridfl

#endif  // HYBRIDFL_PROTOCOL_H_
