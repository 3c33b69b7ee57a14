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

#ifndef HYBRIDFL_EXPERIMENT_H_
#define HYBRIDFL_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hybridfl/config.h"
#include "hybridfl/protocol.h"
#include "hybridfl/simulation.h"

namespace hybridfl {

enum class StopKind { kMaxRounds, kTargetMetric, kTargetLoss };

// A run always ends at t_max. A target additionally ends it at the first
// round whose best-so-far global model reaches the target.
struct StopCriterion {
  StopKind kind = StopKind::kMaxRounds;
  double target = 0.0;

  static StopCriterion MaxRounds() { return {}; }
  static StopCriterion TargetMetric(double value) { return {StopKind::kTargetMetric, value}; }
  static StopCriterion TargetLoss(double value) { return {StopKind::kTargetLoss, value}; }
};

struct ExperimentSpec {
  SimConfig config;
  StopCriterion stop;
  int repeats = 1;
  // Repeat i runs with seed config.seed + i.
  std::filesystem::path out_dir;  // empty: keep everything in memory
  std::string preset;
  int threads = 1;
};

// One point of a run's trajectory. Round 0 is the initial model.
struct RoundPoint {
  int round = 0;
  double round_length_s = 0.0;
  double elapsed_s = 0.0;
  double energy_wh = 0.0;       // cumulative, mean per device
  double loss = 0.0;            // current global model
  double metric = 0.0;
  double best_loss = 0.0;       // best model kept by the cloud so far
  double best_metric = 0.0;
};

struct RunResult {
  ProtocolKind protocol = ProtocolKind::kHybridFL;
  std::uint64_t seed = 0;
  std::vector<RoundPoint> trajectory;
  std::vector<RoundOutcome> outcomes;
  std::string csv;  // per-round CSV text
  bool failed = false;
  std::string failure;
};

struct RunSummary {
  ProtocolKind protocol = ProtocolKind::kHybridFL;
  std::uint64_t seed = 0;
  int rounds = 0;
  double best_metric = 0.0;
  double best_loss = 0.0;
  double avg_round_length_s = 0.0;
  std::optional<int> rounds_to_target;
  double total_time_s = 0.0;    // up to the target, or the whole run
  double energy_wh = 0.0;       // mean per device, same horizon
  std::filesystem::path csv_path;
  bool failed = false;
  std::string failure;
};

// Runs one protocol for up to t_max rounds on `sim`.
RunResult RunProtocol(const Simulation& sim, ProtocolKind protocol, const StopCriterion& stop,
                      int threads = 1);

// First round at which the best-so-far model reaches the target.
std::optional<int> RoundsToTarget(std::span<const RoundPoint> trajectory,
                                  const StopCriterion& target);

RunSummary Summarize(const RunResult& run, const StopCriterion& target);

// Per-round CSV: one row per (round, region).
std::string RoundCsv(std::span<const RoundOutcome> outcomes, std::span<const RoundPoint> points);

// Runs config.protocol for every repeat, writing per-round CSVs when an
// output directory is set.
std::vector<RunSummary> RunExperiment(const ExperimentSpec& spec);

struct Stat {
  double mean = 0.0;
  double stddev = 0.0;
  int count = 0;
};
Stat MeanStd(std::span<const double> values);

struct ComparisonRow {
  std::string label;
  ProtocolKind protocol = ProtocolKind::kHybridFL;
  int repeats = 0;
  int failed = 0;
  Stat best_metric;
  Stat best_loss;
  Stat avg_round_length_s;
  Stat rounds_to_target;   // over repeats that reached the target
  int reached = 0;
  Stat total_time_s;
  Stat energy_wh;
  std::vector<RunSummary> runs;
};

// Every repeat builds one world that all protocols share; selection streams
// are namespaced per protocol, so the order of `protocols` does not matter.
std::vector<ComparisonRow> CompareProtocols(const ExperimentSpec& spec,
                                            std::span<const ProtocolKind> protocols);

// report.txt and summary.csv in `out_dir`.
void EmitReport(std::span<const ComparisonRow> rows, const std::filesystem::path& out_dir);
void WriteSummaryCsv(std::span<const ComparisonRow> rows, std::ostream& out);
void WriteReportText(std::span<const ComparisonRow> rows, std::ostream& out);

// Shortest round-trip decimal form; "nan" and "inf" for non-finite values.
std::string FormatDouble(double value);

// Named scenario configs: fig2, task1, task2-small, task2.
SimConfig PresetConfig(const std::string& name);
std::vector<std::string> PresetNames();

}  // namespace hybridfl

#endif  // HYBRIDFL_EXPERIMENT_H_
