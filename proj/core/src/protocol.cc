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

#include "hybridfl/protocol.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "hybridfl/aggregation.h"
#include "hybridfl/errors.h"
#include "hybridfl/parallel.h"
#include "hybridfl/simclock.h"
#include "hybridfl/trainer.h"

namespace hybridfl {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct TrainJob {
  int client = 0;
  const Eigen::VectorXd* start = nullptr;
};

// Trains every job and returns the updated parameter vectors indexed by
// client id. Untouched ids keep an empty vector.
std::vector<Eigen::VectorXd> TrainAll(const Simulation& sim, const std::vector<TrainJob>& jobs,
                                      const ExecutionOptions& options) {
  std::vector<Eigen::VectorXd> out(static_cast<std::size_t>(sim.topology().num_clients()));
  const auto& config = sim.config();
  ParallelFor(jobs.size(), options.threads, [&](std::size_t i) {
    const TrainJob& job = jobs[i];
    ModelParams start{sim.arch(), *job.start};
    ModelParams trained =
        LocalTrain(start, sim.shard(job.client), config.tau, config.eta, sim.loss());
    out[static_cast<std::size_t>(job.client)] = std::move(trained.theta);
  });
  return out;
}

// Submitters pay for a full round. Survivors that miss the deadline are cut
// off when the window closes; drop-outs are charged nothing.
void ChargeEnergy(const Simulation& sim, const RegionRoundState& region, double window,
                  std::vector<double>& energy) {
  for (int id : region.survivors) {
    const ClientCost& cost = sim.cost(id);
    const bool submitted =
        std::binary_search(region.submitted.begin(), region.submitted.end(), id);
    double fraction = 1.0;
    if (!submitted && cost.completion_s > 0.0) {
      fraction = std::min(1.0, window / cost.completion_s);
    }
    energy[static_cast<std::size_t>(id)] = fraction * cost.energy_j;
  }
}

std::vector<int> Survivors(const Simulation& sim, std::span<const int> selected, int round) {
  return RealizeDropout(selected, sim.topology().clients,
                        [&](int id) { return sim.DropoutDraw(round, id); });
}

std::vector<double> CompletionTimes(const Simulation& sim, std::span<const int> ids) {
  std::vector<double> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(sim.cost(id).completion_s);
  return out;
}

// Edge aggregate over the whole region: fresh models for submitters, the
// edge's previous model for everyone else.
Eigen::VectorXd AggregateRegion(const Simulation& sim, int region,
                                const std::vector<int>& submitted,
                                const std::vector<Eigen::VectorXd>& trained,
                                const Eigen::VectorXd& cache) {
  const auto& members = sim.topology().regions[static_cast<std::size_t>(region)];
  std::vector<const Eigen::VectorXd*> slots;
  std::vector<std::size_t> sizes;
  slots.reserve(members.size());
  sizes.reserve(members.size());
  for (int id : members) {
    const bool fresh = std::binary_search(submitted.begin(), submitted.end(), id);
    slots.push_back(fresh ? &trained[static_cast<std::size_t>(id)] : nullptr);
    sizes.push_back(sim.client_sizes()[static_cast<std::size_t>(id)]);
  }
  return RegionalAggregate(slots, cache, sizes);
}

// Synchronous edge/cloud wait: everything invited came back in time, or the
// deadline hit.
double SynchronousWindow(const Simulation& sim, std::span<const int> selected,
                         std::span<const int> survivors) {
  const double t_lim = sim.t_lim();
  if (survivors.size() != selected.size() || survivors.empty()) return t_lim;
  double latest = 0.0;
  for (int id : survivors) latest = std::max(latest, sim.cost(id).completion_s);
  return std::min(t_lim, latest);
}

std::vector<int> OnTime(const Simulation& sim, std::span<const int> survivors) {
  std::vector<int> out;
  for (int id : survivors) {
    if (sim.cost(id).completion_s <= sim.t_lim()) out.push_back(id);
  }
  return out;
}

}  // namespace

ProtocolState ProtocolState::Initial(const Simulation& sim) {
  ProtocolState state;
  state.global = sim.initial_params().theta;
  const auto& config = sim.config();
  for (const auto& members : sim.topology().regions) {
    state.regional.push_back(state.global);
    state.histories.emplace_back(static_cast<int>(members.size()), config.theta_init,
                                 config.theta_window);
  }
  return state;
}

std::vector<int> SelectClients(std::span<const int> ids, int count, Rng& rng) {
  if (count < 0 || static_cast<std::size_t>(count) > ids.size()) {
    throw DomainError("cannot select " + std::to_string(count) + " of " +
                      std::to_string(ids.size()) + " clients");
  }
  std::vector<int> pool(ids.begin(), ids.end());
  for (int i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i), pool.size() - 1);
    std::swap(pool[static_cast<std::size_t>(i)], pool[pick(rng)]);
  }
  pool.resize(static_cast<std::size_t>(count));
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<int> RealizeDropout(std::span<const int> selected,
                                std::span<const ClientProfile> profiles, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<int> out;
  for (int id : selected) {
    if (unit(rng) >= profiles[static_cast<std::size_t>(id)].dropout) out.push_back(id);
  }
  return out;
}

std::vector<int> RealizeDropout(std::span<const int> selected,
                                std::span<const ClientProfile> profiles,
                                const std::function<double(int)>& uniform) {
  std::vector<int> out;
  for (int id : selected) {
    if (uniform(id) >= profiles[static_cast<std::size_t>(id)].dropout) out.push_back(id);
  }
  return out;
}

int Quota(double C, int n) { return std::max(1, RoundHalfUp(C * n)); }

RoundResult RunHybridRound(const Simulation& sim, const ProtocolState& prev, int round,
                           const ExecutionOptions& options) {
  const auto& config = sim.config();
  const auto& topo = sim.topology();
  const int m = topo.num_regions();
  RoundResult result;
  RoundOutcome& out = result.outcome;
  out.round = round;
  out.protocol = ProtocolKind::kHybridFL;
  out.regions.resize(static_cast<std::size_t>(m));
  out.client_energy_j.assign(static_cast<std::size_t>(topo.num_clients()), 0.0);

  struct Arrival {
    double time;
    int id;
  };
  std::vector<Arrival> arrivals;
  for (int r = 0; r < m; ++r) {
    const auto& members = topo.regions[static_cast<std::size_t>(r)];
    const int n_r = static_cast<int>(members.size());
    RegionRoundState& state = out.regions[static_cast<std::size_t>(r)];
    state.region = r;
    state.theta_hat = EstimateTheta(prev.histories[static_cast<std::size_t>(r)]);
    const SelectionDecision decision = SelectionProportion(config.C, state.theta_hat, n_r);
    state.clamped = decision.clamped;
    Rng rng = Substream(config.seed, "hybridfl/select",
                        {static_cast<std::uint64_t>(round), static_cast<std::uint64_t>(r)});
    state.selected = SelectClients(members, decision.selected, rng);
    state.c_r = static_cast<double>(state.selected.size()) / n_r;
    state.survivors = Survivors(sim, state.selected, round);
    state.completion_s = CompletionTimes(sim, state.survivors);
    for (std::size_t i = 0; i < state.survivors.size(); ++i) {
      arrivals.push_back({state.completion_s[i], state.survivors[i]});
    }
  }

  std::sort(arrivals.begin(), arrivals.end(), [](const Arrival& a, const Arrival& b) {
    return a.time != b.time ? a.time < b.time : a.id < b.id;
  });
  std::size_t on_time = 0;
  while (on_time < arrivals.size() && arrivals[on_time].time <= sim.t_lim()) ++on_time;
  out.quota = Quota(config.C, topo.num_clients());
  const std::size_t quota = static_cast<std::size_t>(out.quota);
  out.quota_met = on_time >= quota;
  const std::size_t accepted = std::min(quota, on_time);
  out.window_s = out.quota_met ? arrivals[accepted - 1].time : sim.t_lim();

  std::vector<TrainJob> jobs;
  for (std::size_t i = 0; i < accepted; ++i) {
    const int id = arrivals[i].id;
    out.regions[static_cast<std::size_t>(topo.clients[static_cast<std::size_t>(id)].region)]
        .submitted.push_back(id);
  }
  for (auto& state : out.regions) {
    std::sort(state.submitted.begin(), state.submitted.end());
    for (int id : state.submitted) jobs.push_back({id, &prev.global});
  }
  const std::vector<Eigen::VectorXd> trained = TrainAll(sim, jobs, options);

  result.next = prev;
  std::vector<double> edc(static_cast<std::size_t>(m), 0.0);
  for (int r = 0; r < m; ++r) {
    RegionRoundState& state = out.regions[static_cast<std::size_t>(r)];
    const int n_r = static_cast<int>(topo.regions[static_cast<std::size_t>(r)].size());
    result.next.regional[static_cast<std::size_t>(r)] = AggregateRegion(
        sim, r, state.submitted, trained, prev.regional[static_cast<std::size_t>(r)]);
    state.edc = static_cast<double>(Edc(state.submitted, sim.client_sizes()));
    edc[static_cast<std::size_t>(r)] = state.edc;
    const int submitted = static_cast<int>(state.submitted.size());
    state.q_r = ComputeQ(submitted, config.C, n_r);
    result.next.histories[static_cast<std::size_t>(r)].Append(state.c_r, state.q_r, submitted);
    ChargeEnergy(sim, state, out.window_s, out.client_energy_j);
  }
  out.edc_total = EdcTotal(edc);
  result.next.global = CloudAggregate(result.next.regional, edc, prev.global);
  ++result.next.cloud_aggregations;
  out.cloud_aggregated = true;
  out.global = result.next.global;
  out.c2e2c_s = sim.CloudEdgeSeconds(ProtocolKind::kHybridFL);
  out.round_length_s = RoundLength(out.window_s, out.c2e2c_s);
  return result;
}

RoundResult RunFedAvgRound(const Simulation& sim, const ProtocolState& prev, int round,
                           const ExecutionOptions& options) {
  const auto& config = sim.config();
  const auto& topo = sim.topology();
  const int n = topo.num_clients();
  RoundResult result;
  RoundOutcome& out = result.outcome;
  out.round = round;
  out.protocol = ProtocolKind::kFedAvg;
  out.client_energy_j.assign(static_cast<std::size_t>(n), 0.0);
  out.quota = Quota(config.C, n);

  std::vector<int> everyone(static_cast<std::size_t>(n));
  std::iota(everyone.begin(), everyone.end(), 0);
  Rng rng = Substream(config.seed, "fedavg/select", {static_cast<std::uint64_t>(round)});
  const std::vector<int> selected = SelectClients(everyone, out.quota, rng);
  const std::vector<int> survivors = Survivors(sim, selected, round);
  const std::vector<int> submitted = OnTime(sim, survivors);
  out.window_s = SynchronousWindow(sim, selected, survivors);
  out.quota_met = submitted.size() == selected.size();

  std::vector<TrainJob> jobs;
  for (int id : submitted) jobs.push_back({id, &prev.global});
  const std::vector<Eigen::VectorXd> trained = TrainAll(sim, jobs, options);

  result.next = prev;
  if (!submitted.empty()) {
    std::vector<const Eigen::VectorXd*> models;
    std::vector<std::size_t> sizes;
    for (int id : submitted) {
      models.push_back(&trained[static_cast<std::size_t>(id)]);
      sizes.push_back(sim.client_sizes()[static_cast<std::size_t>(id)]);
    }
    result.next.global = WeightedAverage(models, sizes);
  }
  ++result.next.cloud_aggregations;
  out.cloud_aggregated = true;

  out.regions.resize(static_cast<std::size_t>(topo.num_regions()));
  for (int r = 0; r < topo.num_regions(); ++r) {
    RegionRoundState& state = out.regions[static_cast<std::size_t>(r)];
    state.region = r;
    state.theta_hat = kNaN;
    const auto in_region = [&](int id) {
      return topo.clients[static_cast<std::size_t>(id)].region == r;
    };
    std::copy_if(selected.begin(), selected.end(), std::back_inserter(state.selected), in_region);
    std::copy_if(survivors.begin(), survivors.end(), std::back_inserter(state.survivors),
                 in_region);
    std::copy_if(submitted.begin(), submitted.end(), std::back_inserter(state.submitted),
                 in_region);
    state.completion_s = CompletionTimes(sim, state.survivors);
    const int n_r = static_cast<int>(topo.regions[static_cast<std::size_t>(r)].size());
    state.c_r = static_cast<double>(state.selected.size()) / n_r;
    state.q_r = ComputeQ(static_cast<int>(state.submitted.size()), config.C, n_r);
    state.edc = static_cast<double>(Edc(state.submitted, sim.client_sizes()));
    out.edc_total += state.edc;
    ChargeEnergy(sim, state, out.window_s, out.client_energy_j);
  }
  out.global = result.next.global;
  out.c2e2c_s = sim.CloudEdgeSeconds(ProtocolKind::kFedAvg);
  out.round_length_s = RoundLength(out.window_s, out.c2e2c_s);
  return result;
}

RoundResult RunHierFavgRound(const Simulation& sim, const ProtocolState& prev, int round,
                             int kappa2, const ExecutionOptions& options) {
  if (kappa2 < 1) throw ConfigError("kappa2 must be >= 1");
  const auto& config = sim.config();
  const auto& topo = sim.topology();
  const int m = topo.num_regions();
  RoundResult result;
  RoundOutcome& out = result.outcome;
  out.round = round;
  out.protocol = ProtocolKind::kHierFAVG;
  out.regions.resize(static_cast<std::size_t>(m));
  out.client_energy_j.assign(static_cast<std::size_t>(topo.num_clients()), 0.0);

  std::vector<double> region_window(static_cast<std::size_t>(m), 0.0);
  std::vector<TrainJob> jobs;
  for (int r = 0; r < m; ++r) {
    const auto& members = topo.regions[static_cast<std::size_t>(r)];
    const int n_r = static_cast<int>(members.size());
    RegionRoundState& state = out.regions[static_cast<std::size_t>(r)];
    state.region = r;
    state.theta_hat = kNaN;
    Rng rng = Substream(config.seed, "hierfavg/select",
                        {static_cast<std::uint64_t>(round), static_cast<std::uint64_t>(r)});
    state.selected = SelectClients(members, Quota(config.C, n_r), rng);
    out.quota += static_cast<int>(state.selected.size());
    state.c_r = static_cast<double>(state.selected.size()) / n_r;
    state.survivors = Survivors(sim, state.selected, round);
    state.completion_s = CompletionTimes(sim, state.survivors);
    state.submitted = OnTime(sim, state.survivors);
    state.q_r = ComputeQ(static_cast<int>(state.submitted.size()), config.C, n_r);
    state.edc = static_cast<double>(Edc(state.submitted, sim.client_sizes()));
    region_window[static_cast<std::size_t>(r)] =
        SynchronousWindow(sim, state.selected, state.survivors);
    for (int id : state.submitted) jobs.push_back({id, &prev.regional[static_cast<std::size_t>(r)]});
  }
  const std::vector<Eigen::VectorXd> trained = TrainAll(sim, jobs, options);

  result.next = prev;
  int submitted_total = 0;
  for (int r = 0; r < m; ++r) {
    RegionRoundState& state = out.regions[static_cast<std::size_t>(r)];
    result.next.regional[static_cast<std::size_t>(r)] = AggregateRegion(
        sim, r, state.submitted, trained, prev.regional[static_cast<std::size_t>(r)]);
    out.edc_total += state.edc;
    submitted_total += static_cast<int>(state.submitted.size());
    ChargeEnergy(sim, state, region_window[static_cast<std::size_t>(r)], out.client_energy_j);
  }
  out.quota_met = submitted_total == out.quota;
  out.window_s = *std::max_element(region_window.begin(), region_window.end());

  if (round % kappa2 == 0) {
    std::vector<double> weights;
    for (int r = 0; r < m; ++r) weights.push_back(static_cast<double>(topo.RegionDataSize(r)));
    result.next.global = CloudAggregate(result.next.regional, weights, prev.global);
    for (auto& regional : result.next.regional) regional = result.next.global;
    ++result.next.cloud_aggregations;
    out.cloud_aggregated = true;
  }
  out.global = result.next.global;
  out.c2e2c_s = sim.CloudEdgeSeconds(ProtocolKind::kHierFAVG);
  out.round_length_s = RoundLength(out.window_s, out.c2e2c_s);
  return result;
}

RoundResult RunRound(ProtocolKind kind, const Simulation& sim, const ProtocolState& prev,
                     int round, const ExecutionOptions& options) {
  switch (kind) {
    case ProtocolKind::kHybridFL:
      return RunHybridRound(sim, prev, round, options);
    case ProtocolKind::kFedAvg:
      return RunFedAvgRound(sim, prev, round, options);
    case ProtocolKind::kHierFAVG:
      return RunHierFavgRound(sim, prev, round, sim.config().kappa2, options);
  }
  throw ConfigError("unknown protocol");
}

}  // namespace hybridfl
