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

// Command-line runner: builds a scenario from a preset and/or a config file,
// runs the requested protocols over several seeds and writes per-round CSVs,
// summary.csv and report.txt.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hybridfl/config.h"
#include "hybridfl/errors.h"
#include "hybridfl/experiment.h"

namespace {

int Run(int argc, char** argv) {
  CLI::App app{"Simulate HybridFL, FedAvg and HierFAVG over a cloud/edge/client topology"};
  std::string config_path;
  std::string preset;
  std::vector<std::string> protocol_names;
  std::optional<std::uint64_t> seed;
  int repeats = 5;
  std::string out_dir = "hybridfl_out";
  std::optional<int> stop_rounds;
  std::optional<double> stop_metric;
  std::optional<double> stop_loss;
  bool parallel_backhaul = false;
  bool list_presets = false;
  int threads = 1;
  std::vector<std::string> overrides;

  app.add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
  app.add_option("--preset", preset, "fig2, task1, task2-small or task2");
  app.add_option("--protocol", protocol_names, "hybridfl, fedavg or hierfavg; repeatable")
      ->check(CLI::IsMember({"hybridfl", "fedavg", "hierfavg"}));
  app.add_option("--seed", seed, "base seed; repeat i uses seed + i");
  app.add_option("--repeats", repeats, "independent worlds per protocol")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "output directory");
  auto* rounds_opt = app.add_option("--stop-rounds", stop_rounds, "run exactly this many rounds")
                         ->check(CLI::NonNegativeNumber);
  auto* metric_opt = app.add_option("--stop-metric", stop_metric,
                                    "stop when the best accuracy / R^2 reaches this value");
  auto* loss_opt =
      app.add_option("--stop-loss", stop_loss, "stop when the best global loss drops to this");
  metric_opt->excludes(rounds_opt)->excludes(loss_opt);
  loss_opt->excludes(rounds_opt);
  app.add_flag("--parallel-backhaul", parallel_backhaul,
               "edges upload to the cloud concurrently (drops the factor m)");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--set", overrides, "extra key=value config entries; repeatable");
  app.add_flag("--list-presets", list_presets, "print the preset names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (list_presets) {
    for (const auto& name : hybridfl::PresetNames()) std::cout << name << '\n';
    return 0;
  }

  hybridfl::ExperimentSpec spec;
  spec.config = preset.empty() ? hybridfl::SimConfig{} : hybridfl::PresetConfig(preset);
  if (!config_path.empty()) spec.config = hybridfl::LoadConfigFile(config_path, spec.config);
  for (const auto& entry : overrides) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) throw hybridfl::ConfigError("--set expects key=value: " + entry);
    hybridfl::ApplyConfigValue(spec.config, entry.substr(0, eq), entry.substr(eq + 1));
  }
  if (seed) spec.config.seed = *seed;
  if (parallel_backhaul) spec.config.parallel_backhaul = true;
  if (stop_rounds) spec.config.t_max = *stop_rounds;
  if (stop_metric) spec.stop = hybridfl::StopCriterion::TargetMetric(*stop_metric);
  if (stop_loss) spec.stop = hybridfl::StopCriterion::TargetLoss(*stop_loss);
  spec.config.Validate();
  spec.repeats = repeats;
  spec.out_dir = out_dir;
  spec.preset = preset.empty() ? "custom" : preset;
  spec.threads = threads;

  std::vector<hybridfl::ProtocolKind> protocols;
  for (const auto& name : protocol_names) protocols.push_back(hybridfl::ParseProtocol(name));
  if (protocols.empty()) {
    protocols = {hybridfl::ProtocolKind::kHybridFL, hybridfl::ProtocolKind::kFedAvg,
                 hybridfl::ProtocolKind::kHierFAVG};
  }

  const auto& dataset = spec.config.dataset;
  if (dataset.kind == hybridfl::DatasetKind::kAerofoil &&
      !std::filesystem::exists(dataset.path)) {
    std::cerr << "note: " << (dataset.path.empty() ? "<no path>" : dataset.path)
              << " not found, using synthetic regression data\n";
  }

  const auto rows = hybridfl::CompareProtocols(spec, protocols);
  hybridfl::EmitReport(rows, spec.out_dir);
  hybridfl::WriteReportText(rows, std::cout);
  std::cout << "wrote " << (spec.out_dir / "summary.csv").string() << " and "
            << (spec.out_dir / "report.txt").string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Run(argc, argv);
  } catch (const hybridfl::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const hybridfl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const hybridfl::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
