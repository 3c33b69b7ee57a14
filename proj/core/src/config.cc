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

#include "hybridfl/config.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <string>

#include "hybridfl/errors.h"

namespace hybridfl {
namespace {

std::string_view Trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

double ToDouble(std::string_view key, std::string_view value) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("key '" + std::string(key) + "': expected a number, got '" +
                      std::string(value) + "'");
  }
  return out;
}

long long ToInt(std::string_view key, std::string_view value) {
  long long out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("key '" + std::string(key) + "': expected an integer, got '" +
                      std::string(value) + "'");
  }
  return out;
}

std::uint64_t ToUnsigned(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("key '" + std::string(key) + "': expected an unsigned integer, got '" +
                      std::string(value) + "'");
  }
  return out;
}

bool ToBool(std::string_view key, std::string_view value) {
  if (value == "1" || value == "true" || value == "on" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "off" || value == "no") return false;
  throw ConfigError("key '" + std::string(key) + "': expected a boolean, got '" +
                    std::string(value) + "'");
}

template <typename T, typename Fn>
std::vector<T> ToList(std::string_view value, Fn convert) {
  std::vector<T> out;
  while (!value.empty()) {
    auto comma = value.find(',');
    auto item = Trim(value.substr(0, comma));
    if (!item.empty()) out.push_back(convert(item));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

using Setter = std::function<void(SimConfig&, std::string_view, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& Setters() {
  auto num = [](double SimConfig::*field) {
    return Setter([field](SimConfig& c, std::string_view k, std::string_view v) {
      c.*field = ToDouble(k, v);
    });
  };
  auto integer = [](int SimConfig::*field) {
    return Setter([field](SimConfig& c, std::string_view k, std::string_view v) {
      c.*field = static_cast<int>(ToInt(k, v));
    });
  };
  auto gauss = [](Gaussian SimConfig::*field, bool mean) {
    return Setter([field, mean](SimConfig& c, std::string_view k, std::string_view v) {
      (mean ? (c.*field).mean : (c.*field).stddev) = ToDouble(k, v);
    });
  };
  static const std::map<std::string, Setter, std::less<>> setters = {
      {"n", integer(&SimConfig::n)},
      {"m", integer(&SimConfig::m)},
      {"C", num(&SimConfig::C)},
      {"tau", integer(&SimConfig::tau)},
      {"t_max", integer(&SimConfig::t_max)},
      {"eta", num(&SimConfig::eta)},
      {"seed", [](SimConfig& c, std::string_view k, std::string_view v) {
         c.seed = ToUnsigned(k, v);
       }},
      {"speed_mean", gauss(&SimConfig::speed_ghz, true)},
      {"speed_std", gauss(&SimConfig::speed_ghz, false)},
      {"bw_mean", gauss(&SimConfig::bandwidth_mhz, true)},
      {"bw_std", gauss(&SimConfig::bandwidth_mhz, false)},
      {"dr_mean", gauss(&SimConfig::dropout, true)},
      {"dr_std", gauss(&SimConfig::dropout, false)},
      {"pop_mean", gauss(&SimConfig::population, true)},
      {"pop_std", gauss(&SimConfig::population, false)},
      {"region_sizes", [](SimConfig& c, std::string_view k, std::string_view v) {
         c.region_sizes = ToList<int>(v, [k](std::string_view s) {
           return static_cast<int>(ToInt(k, s));
         });
       }},
      {"region_dr_mean", [](SimConfig& c, std::string_view k, std::string_view v) {
         auto means = ToList<double>(v, [k](std::string_view s) { return ToDouble(k, s); });
         c.region_dropout.resize(means.size(), c.dropout);
         for (std::size_t i = 0; i < means.size(); ++i) c.region_dropout[i].mean = means[i];
       }},
      {"region_dr_std", [](SimConfig& c, std::string_view k, std::string_view v) {
         auto stds = ToList<double>(v, [k](std::string_view s) { return ToDouble(k, s); });
         c.region_dropout.resize(stds.size(), c.dropout);
         for (std::size_t i = 0; i < stds.size(); ++i) c.region_dropout[i].stddev = stds[i];
       }},
      {"SNR", num(&SimConfig::snr)},
      {"BR", num(&SimConfig::br_mbps)},
      {"msize", num(&SimConfig::msize_bits)},
      {"msize_mb", [](SimConfig& c, std::string_view k, std::string_view v) {
         c.msize_bits = ToDouble(k, v) * 8e6;
       }},
      {"BPS", num(&SimConfig::bps)},
      {"CPB", num(&SimConfig::cpb)},
      {"P_trans", num(&SimConfig::p_trans)},
      {"P_comp_base", num(&SimConfig::p_comp_base)},
      {"protocol", [](SimConfig& c, std::string_view, std::string_view v) {
         c.protocol = ParseProtocol(v);
       }},
      {"kappa2", integer(&SimConfig::kappa2)},
      {"parallel_backhaul", [](SimConfig& c, std::string_view k, std::string_view v) {
         c.parallel_backhaul = ToBool(k, v);
       }},
      {"theta_init", num(&SimConfig::theta_init)},
      {"theta_window", integer(&SimConfig::theta_window)},
      {"dataset", [](SimConfig& c, std::string_view, std::string_view v) {
         if (v == "aerofoil") {
           c.dataset.kind = DatasetKind::kAerofoil;
         } else if (v == "synthetic_regression") {
           c.dataset.kind = DatasetKind::kSyntheticRegression;
         } else if (v == "synthetic_classification") {
           c.dataset.kind = DatasetKind::kSyntheticClassification;
         } else {
           throw ConfigError("unknown dataset '" + std::string(v) + "'");
         }
       }},
      {"dataset_path", [](SimConfig& c, std::string_view, std::string_view v) {
         c.dataset.path = std::string(v);
       }},
      {"synthetic_fallback", [](SimConfig& c, std::string_view k, std::string_view v) {
         c.dataset.synthetic_fallback = ToBool(k, v);
       }},
      {"samples", [](SimConfig& c, std::string_view k, std::string_view v) {
         c.dataset.samples = static_cast<std::size_t>(ToInt(k, v));
       }},
      {"features", [](SimConfig& c, std::string_view k, std::string_view v) {
         c.dataset.features = static_cast<int>(ToInt(k, v));
       }},
      {"classes", [](SimConfig& c, std::string_view k, std::string_view v) {
         c.dataset.classes = static_cast<int>(ToInt(k, v));
       }},
      {"noise_std", [](SimConfig& c, std::string_view k, std::string_view v) {
         c.dataset.noise_std = ToDouble(k, v);
       }},
      {"partition", [](SimConfig& c, std::string_view, std::string_view v) {
         if (v == "gaussian") {
           c.dataset.partition = PartitionKind::kGaussianSizes;
         } else if (v == "label_skew") {
           c.dataset.partition = PartitionKind::kLabelSkew;
         } else {
           throw ConfigError("unknown partition '" + std::string(v) + "'");
         }
       }},
      {"data_mean", [](SimConfig& c, std::string_view k, std::string_view v) {
         c.dataset.partition_size.mean = ToDouble(k, v);
       }},
      {"data_std", [](SimConfig& c, std::string_view k, std::string_view v) {
         c.dataset.partition_size.stddev = ToDouble(k, v);
       }},
      {"affinity", [](SimConfig& c, std::string_view k, std::string_view v) {
         c.dataset.affinity = ToDouble(k, v);
       }},
      {"hidden", [](SimConfig& c, std::string_view k, std::string_view v) {
         c.dataset.hidden = ToList<int>(v, [k](std::string_view s) {
           return static_cast<int>(ToInt(k, s));
         });
       }},
  };
  return setters;
}

}  // namespace

std::string_view ProtocolName(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::kHybridFL: return "hybridfl";
    case ProtocolKind::kFedAvg: return "fedavg";
    case ProtocolKind::kHierFAVG: return "hierfavg";
  }
  return "unknown";
}

ProtocolKind ParseProtocol(std::string_view name) {
  if (name == "hybridfl") return ProtocolKind::kHybridFL;
  if (name == "fedavg") return ProtocolKind::kFedAvg;
  if (name == "hierfavg") return ProtocolKind::kHierFAVG;
  throw ConfigError("unknown protocol '" + std::string(name) + "'");
}

void SimConfig::Validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (n < 1) fail("n must be >= 1");
  if (m < 1) fail("m must be >= 1");
  if (m > n) fail("m > n: every edge node needs at least one client");
  if (!(C > 0.0 && C <= 1.0)) fail("C must lie in (0, 1]");
  if (tau < 1) fail("tau must be >= 1");
  if (t_max < 0) fail("t_max must be >= 0");
  if (!(eta >= 0.0)) fail("eta must be >= 0");
  if (speed_ghz.mean <= 0.0 || speed_ghz.stddev < 0.0) fail("client speed distribution must have mean > 0 and std >= 0");
  if (bandwidth_mhz.mean <= 0.0 || bandwidth_mhz.stddev < 0.0) fail("client bandwidth distribution must have mean > 0 and std >= 0");
  if (dropout.stddev < 0.0) fail("drop-out std must be >= 0");
  if (region_sizes.empty() && (population.mean <= 0.0 || population.stddev < 0.0)) {
    fail("region population distribution must have mean > 0 and std >= 0");
  }
  if (!region_sizes.empty()) {
    if (static_cast<int>(region_sizes.size()) != m) fail("region_sizes must list m entries");
    int total = 0;
    for (int s : region_sizes) {
      if (s < 1) fail("every region needs at least one client");
      total += s;
    }
    if (total != n) fail("region_sizes must sum to n");
  }
  if (!region_dropout.empty() && static_cast<int>(region_dropout.size()) != m) {
    fail("per-region drop-out lists must have m entries");
  }
  for (const auto& g : region_dropout) {
    if (g.stddev < 0.0) fail("per-region drop-out std must be >= 0");
  }
  if (snr <= 0.0 || br_mbps <= 0.0 || msize_bits < 0.0 || bps <= 0.0 || cpb <= 0.0) {
    fail("SNR, BR, BPS, CPB must be > 0 and msize >= 0");
  }
  if (p_trans < 0.0 || p_comp_base < 0.0) fail("power constants must be >= 0");
  if (kappa2 < 1) fail("kappa2 must be >= 1");
  if (!(theta_init > 0.0 && theta_init <= 1.0)) fail("theta_init must lie in (0, 1]");
  if (theta_window < 0) fail("theta_window must be >= 0");
  if (dataset.samples < static_cast<std::size_t>(n) &&
      dataset.kind != DatasetKind::kAerofoil) {
    fail("dataset must hold at least one sample per client");
  }
  if (dataset.features < 1) fail("features must be >= 1");
  if (dataset.partition_size.mean <= 0.0 || dataset.partition_size.stddev < 0.0) {
    fail("data partition distribution must have mean > 0 and std >= 0");
  }
  if (!(dataset.affinity >= 0.0 && dataset.affinity <= 1.0)) fail("affinity must lie in [0, 1]");
  for (int h : dataset.hidden) {
    if (h < 1) fail("hidden layer widths must be >= 1");
  }
}

void ApplyConfigValue(SimConfig& config, std::string_view key,
                      std::string_view value) {
  const auto& setters = Setters();
  auto it = setters.find(key);
  if (it == setters.end()) throw ConfigError("unknown config key '" + std::string(key) + "'");
  it->second(config, key, value);
}

SimConfig ParseConfig(std::istream& in, SimConfig base) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = Trim(view);
    if (view.empty()) continue;
    auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("config line " + std::to_string(line_no) + ": expected key = value",
                       line_no);
    }
    try {
      ApplyConfigValue(base, Trim(view.substr(0, eq)), Trim(view.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ParseError("config line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
  }
  return base;
}

SimConfig LoadConfigFile(const std::string& path, SimConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  return ParseConfig(in, std::move(base));
}

}  // namespace hybridfl
