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

#ifndef HYBRIDFL_ESTIMATOR_H_
#define HYBRIDFL_ESTIMATOR_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hybridfl {

// What an edge node may legally remember about past rounds: the selection
// proportion it used, the normalized submission count q_r, and how many
// models arrived. Nothing here identifies a client or records who dropped
// out.
class RegionHistory {
 public:
  RegionHistory(int n_r, double theta_init = 0.5, int window = 0);

  void Append(double c_r, double q_r, int submitted);

  int n_r() const { return n_r_; }
  double theta_init() const { return theta_init_; }
  int window() const { return window_; }
  std::size_t size() const { return c_r_.size(); }
  std::span<const double> c_r() const { return c_r_; }
  std::span<const double> q_r() const { return q_r_; }
  std::span<const int> submitted() const { return submitted_; }

 private:
  int n_r_;
  double theta_init_;
  int window_;  // 0 = use every past round
  std::vector<double> c_r_;
  std::vector<double> q_r_;
  std::vector<int> submitted_;
};

struct SelectionDecision {
  double c_r = 0.0;       // proportion of the region to invite, in (0, 1]
  int selected = 0;       // |U_r|, between 1 and n_r
  bool clamped = false;   // C / theta_hat exceeded 1
};

inline constexpr double kThetaFloor = 0.05;

// q_r = |S_r| / (C * n_r). May exceed 1.
double ComputeQ(int submitted, double C, int n_r);

// Least-squares slope of |S_r(i)| / n_r against C_r(i) q_r(i) through the
// origin, clamped to [kThetaFloor, 1]. Falls back to theta_init when the
// history is empty or carries no signal.
double EstimateTheta(const RegionHistory& history);

// C_r = min(1, C / theta_hat); |U_r| = max(1, round_half_up(C_r * n_r)).
SelectionDecision SelectionProportion(double C, double theta_hat, int n_r);

// Round-half-up with a 1e-9 guard against representation error (0.3 * 15).
int RoundHalfUp(double x);

// Monte-Carlo estimate of E|X_r|: pick `selected` of the clients uniformly
// without replacement, let each survive with its reliability, count.
double ExpectedSurvivorsMonteCarlo(std::span<const double> reliabilities,
                                   int selected, int trials, std::uint64_t seed);

}  // namespace hybridfl

#endif  // HYBRIDFL_ESTIMATOR_H_
