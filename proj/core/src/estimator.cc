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

#include "hybridfl/estimator.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hybridfl/errors.h"
#include "hybridfl/rng.h"

namespace hybridfl {

RegionHistory::RegionHistory(int n_r, double theta_init, int window)
    : n_r_(n_r), theta_init_(theta_init), window_(window) {
  if (n_r < 1) throw DomainError("a region needs at least one client");
  if (!(theta_init > 0.0 && theta_init <= 1.0)) throw DomainError("theta_init must lie in (0, 1]");
  if (window < 0) throw DomainError("window must be >= 0");
}

void RegionHistory::Append(double c_r, double q_r, int submitted) {
  if (!(c_r > 0.0 && c_r <= 1.0)) throw DomainError("C_r must lie in (0, 1]");
  if (!(q_r >= 0.0)) throw DomainError("q_r must be >= 0");
  if (submitted < 0 || submitted > n_r_) throw DomainError("|S_r| must lie in [0, n_r]");
  c_r_.push_back(c_r);
  q_r_.push_back(q_r);
  submitted_.push_back(submitted);
}

double ComputeQ(int submitted, double C, int n_r) {
  const double denom = C * static_cast<double>(n_r);
  if (!(denom > 0.0)) throw DomainError("C * n_r must be positive");
  return static_cast<double>(submitted) / denom;
}

double EstimateTheta(const RegionHistory& history) {
  const std::size_t len = history.size();
  const std::size_t first =
      history.window() > 0 && len > static_cast<std::size_t>(history.window())
          ? len - static_cast<std::size_t>(history.window())
          : 0;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = first; i < len; ++i) {
    const double x = history.c_r()[i] * history.q_r()[i];
    num += x * static_cast<double>(history.submitted()[i]);
    den += x * x;
  }
  if (!(den > 0.0)) return history.theta_init();
  const double theta = num / den / static_cast<double>(history.n_r());
  if (!std::isfinite(theta)) return history.theta_init();
  return std::clamp(theta, kThetaFloor, 1.0);
}

int RoundHalfUp(double x) { return static_cast<int>(std::floor(x + 0.5 + 1e-9)); }

SelectionDecision SelectionProportion(double C, double theta_hat, int n_r) {
  if (!(theta_hat > 0.0)) throw DomainError("theta_hat must be positive");
  if (!(C > 0.0 && C <= 1.0)) throw DomainError("C must lie in (0, 1]");
  if (n_r < 1) throw DomainError("n_r must be >= 1");
  SelectionDecision d;
  const double raw = C / theta_hat;
  d.clamped = raw > 1.0;
  d.c_r = std::min(1.0, raw);
  d.selected = std::clamp(RoundHalfUp(d.c_r * n_r), 1, n_r);
  return d;
}

double ExpectedSurvivorsMonteCarlo(std::span<const double> reliabilities,
                                   int selected, int trials, std::uint64_t seed) {
  if (selected < 0 || static_cast<std::size_t>(selected) > reliabilities.size()) {
    throw DomainError("cannot select more clients than exist");
  }
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (selected == 0) return 0.0;
  Rng rng = Substream(seed, "estimator/mc");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::size_t> ids(reliabilities.size());
  std::iota(ids.begin(), ids.end(), 0);
  long long survivors = 0;
  for (int trial = 0; trial < trials; ++trial) {
    // Partial Fisher-Yates: the first `selected` slots are a uniform subset.
    for (int i = 0; i < selected; ++i) {
      std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i), ids.size() - 1);
      std::swap(ids[static_cast<std::size_t>(i)], ids[pick(rng)]);
      if (unit(rng) < reliabilities[ids[static_cast<std::size_t>(i)]]) ++survivors;
    }
  }
  return static_cast<double>(survivors) / trials;
}

}  // namespace hybridfl
