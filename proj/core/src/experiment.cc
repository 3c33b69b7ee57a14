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

#include "hybridfl/experiment.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

#include "hybridfl/errors.h"
#include "hybridfl/parallel.h"
#include "hybridfl/trainer.h"

namespace hybridfl {
namespace {

constexpr double kJoulesPerWh = 3600.0;

bool Reached(const RoundPoint& point, const StopCriterion& stop) {
  switch (stop.kind) {
    case StopKind::kMaxRounds:
      return false;
    case StopKind::kTargetMetric:
      return point.best_metric >= stop.target;
    case StopKind::kTargetLoss:
      return point.best_loss <= stop.target;
  }
  return false;
}

std::string CsvName(ProtocolKind protocol, std::uint64_t seed, const std::string& preset) {
  std::string name = preset.empty() ? "run" : preset;
  name += '_';
  name += ProtocolName(protocol);
  name += "_seed" + std::to_string(seed) + ".csv";
  return name;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

void EnsureDir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string());
  }
}

std::string FormatStat(const Stat& stat) {
  if (stat.count == 0) return "n/a";
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << stat.mean << " +- " << stat.stddev;
  return out.str();
}

}  // namespace

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

RunResult RunProtocol(const Simulation& sim, ProtocolKind protocol, const StopCriterion& stop,
                      int threads) {
  RunResult run;
  run.protocol = protocol;
  run.seed = sim.config().seed;
  const int n = sim.topology().num_clients();
  const ExecutionOptions options{threads};

  ProtocolState state = ProtocolState::Initial(sim);
  Evaluation eval = Evaluate(ModelParams{sim.arch(), state.global}, sim.dataset(), sim.loss());
  RoundPoint point;
  point.loss = point.best_loss = eval.loss;
  point.metric = point.best_metric = eval.metric;
  run.trajectory.push_back(point);

  try {
    for (int t = 1; t <= sim.config().t_max; ++t) {
      RoundResult result = RunRound(protocol, sim, state, t, options);
      const bool changed = result.next.global != state.global;
      state = std::move(result.next);
      if (changed) {
        eval = Evaluate(ModelParams{sim.arch(), state.global}, sim.dataset(), sim.loss());
        if (!std::isfinite(eval.loss)) throw TrainingDiverged(t * sim.config().tau);
      }
      const RoundOutcome& outcome = result.outcome;
      RoundPoint next;
      next.round = t;
      next.round_length_s = outcome.round_length_s;
      next.elapsed_s = point.elapsed_s + outcome.round_length_s;
      const double joules =
          std::accumulate(outcome.client_energy_j.begin(), outcome.client_energy_j.end(), 0.0);
      next.energy_wh = point.energy_wh + joules / n / kJoulesPerWh;
      next.loss = eval.loss;
      next.metric = eval.metric;
      next.best_loss = std::min(point.best_loss, eval.loss);
      next.best_metric = std::max(point.best_metric, eval.metric);
      point = next;
      run.trajectory.push_back(point);
      run.outcomes.push_back(std::move(result.outcome));
      run.outcomes.back().global.resize(0);
      if (Reached(point, stop)) break;
    }
  } catch (const TrainingDiverged& e) {
    run.failed = true;
    run.failure = e.what();
  }
  run.csv = RoundCsv(run.outcomes, run.trajectory);
  return run;
}

std::optional<int> RoundsToTarget(std::span<const RoundPoint> trajectory,
                                  const StopCriterion& target) {
  if (target.kind == StopKind::kMaxRounds) return std::nullopt;
  for (const auto& point : trajectory) {
    if (Reached(point, target)) return point.round;
  }
  return std::nullopt;
}

RunSummary Summarize(const RunResult& run, const StopCriterion& target) {
  RunSummary summary;
  summary.protocol = run.protocol;
  summary.seed = run.seed;
  summary.failed = run.failed;
  summary.failure = run.failure;
  const RoundPoint& last = run.trajectory.back();
  summary.rounds = last.round;
  summary.best_metric = last.best_metric;
  summary.best_loss = last.best_loss;
  summary.avg_round_length_s = last.round > 0 ? last.elapsed_s / last.round : 0.0;
  summary.rounds_to_target = RoundsToTarget(run.trajectory, target);
  const RoundPoint& horizon =
      summary.rounds_to_target ? run.trajectory[static_cast<std::size_t>(*summary.rounds_to_target)]
                               : last;
  summary.total_time_s = horizon.elapsed_s;
  summary.energy_wh = horizon.energy_wh;
  return summary;
}

std::string RoundCsv(std::span<const RoundOutcome> outcomes, std::span<const RoundPoint> points) {
  std::string out =
      "protocol,t,r,C_r,U_r,X_r,S_r,q_r,theta_hat,EDC_r,round_length,cumulative_energy,"
      "global_loss,global_metric\n";
  for (const auto& outcome : outcomes) {
    const RoundPoint& point = points[static_cast<std::size_t>(outcome.round)];
    for (const auto& region : outcome.regions) {
      out += ProtocolName(outcome.protocol);
      out += ',' + std::to_string(outcome.round);
      out += ',' + std::to_string(region.region);
      out += ',' + FormatDouble(region.c_r);
      out += ',' + std::to_string(region.selected.size());
      out += ',' + std::to_string(region.survivors.size());
      out += ',' + std::to_string(region.submitted.size());
      out += ',' + FormatDouble(region.q_r);
      out += ',' + FormatDouble(region.theta_hat);
      out += ',' + FormatDouble(region.edc);
      out += ',' + FormatDouble(outcome.round_length_s);
      out += ',' + FormatDouble(point.energy_wh);
      out += ',' + FormatDouble(point.loss);
      out += ',' + FormatDouble(point.metric);
      out += '\n';
    }
  }
  return out;
}

std::vector<RunSummary> RunExperiment(const ExperimentSpec& spec) {
  if (spec.repeats < 1) throw ConfigError("repeats must be >= 1");
  if (!spec.out_dir.empty()) EnsureDir(spec.out_dir);
  std::vector<RunSummary> summaries(static_cast<std::size_t>(spec.repeats));
  const int inner = spec.repeats > 1 ? 1 : spec.threads;
  ParallelFor(summaries.size(), spec.threads, [&](std::size_t i) {
    SimConfig config = spec.config;
    config.seed = spec.config.seed + i;
    const Simulation sim = Simulation::Build(config);
    const RunResult run = RunProtocol(sim, config.protocol, spec.stop, inner);
    RunSummary summary = Summarize(run, spec.stop);
    if (!spec.out_dir.empty()) {
      summary.csv_path = spec.out_dir / CsvName(run.protocol, config.seed, spec.preset);
      WriteFile(summary.csv_path, run.csv);
    }
    summaries[i] = std::move(summary);
  });
  return summaries;
}

Stat MeanStd(std::span<const double> values) {
  Stat stat;
  stat.count = static_cast<int>(values.size());
  if (values.empty()) return stat;
  stat.mean = std::accumulate(values.begin(), values.end(), 0.0) / stat.count;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - stat.mean) * (v - stat.mean);
    stat.stddev = std::sqrt(ss / (stat.count - 1));
  }
  return stat;
}

std::vector<ComparisonRow> CompareProtocols(const ExperimentSpec& spec,
                                            std::span<const ProtocolKind> protocols) {
  if (protocols.empty()) throw ConfigError("no protocols to compare");
  if (spec.repeats < 1) throw ConfigError("repeats must be >= 1");
  if (!spec.out_dir.empty()) EnsureDir(spec.out_dir);
  const std::size_t repeats = static_cast<std::size_t>(spec.repeats);
  const std::size_t cells = repeats * protocols.size();

  std::vector<Simulation> worlds(repeats);
  ParallelFor(repeats, spec.threads, [&](std::size_t i) {
    SimConfig config = spec.config;
    config.seed = spec.config.seed + i;
    worlds[i] = Simulation::Build(config);
  });

  std::vector<RunResult> runs(cells);
  const int inner = cells > 1 ? 1 : spec.threads;
  ParallelFor(cells, spec.threads, [&](std::size_t cell) {
    const std::size_t i = cell / protocols.size();
    const ProtocolKind protocol = protocols[cell % protocols.size()];
    runs[cell] = RunProtocol(worlds[i], protocol, spec.stop, inner);
  });

  std::vector<ComparisonRow> rows;
  for (std::size_t p = 0; p < protocols.size(); ++p) {
    ComparisonRow row;
    row.label = spec.preset.empty() ? "custom" : spec.preset;
    row.protocol = protocols[p];
    row.repeats = spec.repeats;
    std::vector<double> metric, loss, length, rounds, time, energy;
    for (std::size_t i = 0; i < repeats; ++i) {
      const RunResult& run = runs[i * protocols.size() + p];
      RunSummary summary = Summarize(run, spec.stop);
      if (!spec.out_dir.empty()) {
        summary.csv_path = spec.out_dir / CsvName(run.protocol, run.seed, spec.preset);
        WriteFile(summary.csv_path, run.csv);
      }
      if (summary.failed) ++row.failed;
      metric.push_back(summary.best_metric);
      loss.push_back(summary.best_loss);
      length.push_back(summary.avg_round_length_s);
      if (summary.rounds_to_target) {
        ++row.reached;
        rounds.push_back(*summary.rounds_to_target);
      }
      time.push_back(summary.total_time_s);
      energy.push_back(summary.energy_wh);
      row.runs.push_back(std::move(summary));
    }
    row.best_metric = MeanStd(metric);
    row.best_loss = MeanStd(loss);
    row.avg_round_length_s = MeanStd(length);
    row.rounds_to_target = MeanStd(rounds);
    row.total_time_s = MeanStd(time);
    row.energy_wh = MeanStd(energy);
    rows.push_back(std::move(row));
  }
  return rows;
}

void WriteSummaryCsv(std::span<const ComparisonRow> rows, std::ostream& out) {
  out << "label,protocol,repeats,failed,best_metric_mean,best_metric_std,best_loss_mean,"
         "best_loss_std,round_length_mean,round_length_std,reached,rounds_to_target_mean,"
         "rounds_to_target_std,total_time_mean,total_time_std,energy_wh_mean,energy_wh_std\n";
  for (const auto& row : rows) {
    out << row.label << ',' << ProtocolName(row.protocol) << ',' << row.repeats << ','
        << row.failed << ',' << FormatDouble(row.best_metric.mean) << ','
        << FormatDouble(row.best_metric.stddev) << ',' << FormatDouble(row.best_loss.mean) << ','
        << FormatDouble(row.best_loss.stddev) << ','
        << FormatDouble(row.avg_round_length_s.mean) << ','
        << FormatDouble(row.avg_round_length_s.stddev) << ',' << row.reached << ',';
    if (row.rounds_to_target.count > 0) {
      out << FormatDouble(row.rounds_to_target.mean) << ','
          << FormatDouble(row.rounds_to_target.stddev);
    } else {
      out << ',';
    }
    out << ',' << FormatDouble(row.total_time_s.mean) << ','
        << FormatDouble(row.total_time_s.stddev) << ',' << FormatDouble(row.energy_wh.mean)
        << ',' << FormatDouble(row.energy_wh.stddev) << '\n';
  }
}

void WriteReportText(std::span<const ComparisonRow> rows, std::ostream& out) {
  out << std::left << std::setw(14) << "label" << std::setw(10) << "protocol" << std::setw(22)
      << "best metric" << std::setw(22) << "round length (s)" << std::setw(24)
      << "rounds to target" << std::setw(26) << "total time (s)" << "energy (Wh)\n";
  for (const auto& row : rows) {
    std::string reached = FormatStat(row.rounds_to_target);
    reached += " [" + std::to_string(row.reached) + "/" + std::to_string(row.repeats) + "]";
    out << std::left << std::setw(14) << row.label << std::setw(10)
        << ProtocolName(row.protocol) << std::setw(22) << FormatStat(row.best_metric)
        << std::setw(22) << FormatStat(row.avg_round_length_s) << std::setw(24) << reached
        << std::setw(26) << FormatStat(row.total_time_s) << FormatStat(row.energy_wh);
    if (row.failed > 0) out << "  (" << row.failed << " diverged)";
    out << '\n';
  }
}

void EmitReport(std::span<const ComparisonRow> rows, const std::filesystem::path& out_dir) {
  EnsureDir(out_dir);
  std::ostringstream csv;
  WriteSummaryCsv(rows, csv);
  WriteFile(out_dir / "summary.csv", csv.str());
  std::ostringstream text;
  WriteReportText(rows, text);
  WriteFile(out_dir / "report.txt", text.str());
}

SimConfig PresetConfig(const std::string& name) {
  SimConfig config;
  if (name == "task1") {
    config.dataset.kind = DatasetKind::kAerofoil;
    config.dataset.path = "data/airfoil_self_noise.dat";
    return config;
  }
  if (name == "fig2") {
    config.n = 20;
    config.m = 2;
    config.region_sizes = {11, 9};
    config.region_dropout = {Gaussian{0.57, 0.15}, Gaussian{0.43, 0.15}};
    config.t_max = 100;
    return config;
  }
  if (name == "task2-small" || name == "task2") {
    const bool full = name == "task2";
    config.n = full ? 500 : 50;
    config.m = full ? 10 : 3;
    if (full) {
      config.population = Gaussian{50.0, 15.0};
    } else {
      config.region_sizes = {18, 17, 15};
    }
    config.t_max = full ? 400 : 200;
    config.eta = 1e-3;
    config.speed_ghz = Gaussian{1.0, 0.3};
    config.bandwidth_mhz = Gaussian{1.0, 0.3};
    config.msize_bits = 8e7;
    config.bps = 28 * 28 * 1 * 8;
    config.cpb = 400.0;
    config.dataset.kind = DatasetKind::kSyntheticClassification;
    config.dataset.samples = full ? 70000 : 7000;
    config.dataset.features = full ? 784 : 64;
    config.dataset.classes = 10;
    config.dataset.noise_std = 0.5;
    config.dataset.partition = PartitionKind::kLabelSkew;
    config.dataset.affinity = 0.75;
    config.dataset.hidden = full ? std::vector<int>{64} : std::vector<int>{32};
    return config;
  }
  throw ConfigError("unknown preset '" + name + "'");
}

std::vector<std::string> PresetNames() { return {"fig2", "task1", "task2-small", "task2"}; }

}  // namespace hybridfl
