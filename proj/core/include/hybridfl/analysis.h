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

#ifndef HYBRIDFL_ANALYSIS_H_
#define HYBRIDFL_ANALYSIS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hybridfl/dataset.h"
#include "hybridfl/model.h"

namespace hybridfl {

struct BoundParameters {
  double rho = 0.0;
  double beta = 0.0;
  double delta_bar = 0.0;
  double eta = 0.0;
  int tau = 1;
  double omega = 0.0;
  double epsilon = 0.0;
};

// A client's local objective F_k over a flat parameter vector.
struct ClientObjective {
  std::function<double(const Eigen::VectorXd&)> loss;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
};

struct ObjectiveSnapshot {
  std::vector<double> gamma;
  std::vector<ClientObjective> clients;
  std::optional<Eigen::VectorXd> w_star;
};

// Wraps the mean loss of `arch` on `data` as a client objective.
ClientObjective MakeModelObjective(const Architecture& arch, const Dataset& data, LossKind loss);

// F(w) = sum_k gamma_k F_k(w). Throws DomainError unless gamma sums to 1
// within 1e-9 and matches the client count.
double GlobalObjective(const Eigen::VectorXd& w, const ObjectiveSnapshot& snapshot);
Eigen::VectorXd GlobalGradient(const Eigen::VectorXd& w, const ObjectiveSnapshot& snapshot);

// max over clients and probes of ||grad F_k(w) - grad F(w)||.
double EstimateDivergence(const ObjectiveSnapshot& snapshot,
                          std::span<const Eigen::VectorXd> probes);

// (delta/beta)((eta beta + 1)^x - 1) - eta delta x.
double HBar(double x, double eta, double beta, double delta_bar);

// rho * HBar(z - (t-1) tau). Requires (t-1) tau < z <= t tau.
double DivergenceBound(int z, int t, int tau, const BoundParameters& params);

struct ConvergenceResult {
  std::optional<double> bound;
  bool cond1_eta_le_inv_beta = false;
  bool cond2_positive_denominator = false;
  // Conditions that involve the unobservable optimum trajectory are only
  // reported as assumptions.
  bool cond3_assumed = true;
  bool cond4_assumed = true;
};

// 1 / (t tau (omega eta (1 - beta eta / 2) - rho h(tau) / (tau eps^2))).
ConvergenceResult ConvergenceBound(int t, const BoundParameters& params);

// F_k(w) = mean_i (x_i . w - y_i)^2 = w'A w - 2 b'w + c.
struct QuadraticClient {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  double c = 0.0;

  static QuadraticClient FromSamples(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);
  double Loss(const Eigen::VectorXd& w) const;
  Eigen::VectorXd Gradient(const Eigen::VectorXd& w) const;
};

struct QuadraticProblem {
  std::vector<QuadraticClient> clients;
  std::vector<double> gamma;
  Eigen::VectorXd w0;

  int dim() const { return static_cast<int>(w0.size()); }
  // Minimizer of the gamma-weighted objective.
  Eigen::VectorXd Optimum() const;
  ObjectiveSnapshot Snapshot() const;
};

// Random instance: each client gets its own feature scale and target shift,
// so curvatures and optima differ across clients. gamma is the flattened
// two-level weighting of a random split into edges.
QuadraticProblem RandomQuadraticProblem(int clients, int dim, std::uint64_t seed);

// Closed-form constants over the ball ||w - w*|| <= radius: beta from the
// largest client Hessian, rho from the global gradient, delta_bar as the
// largest per-client divergence bound.
BoundParameters QuadraticConstants(const QuadraticProblem& problem, double radius, double eta,
                                   int tau);

struct DivergenceGapRow {
  int epoch = 0;
  int round = 0;
  double gap = 0.0;
  double bound = 0.0;
};

struct DivergenceGapReport {
  std::vector<DivergenceGapRow> rows;
  BoundParameters params;
  double radius = 0.0;
  double max_gap = 0.0;
  bool pass = false;
};

// Runs the federated recursion (every client starts each round from the
// aggregate, aggregate formed every epoch as a virtual sequence) against the
// centralized recursion restarted at every round boundary, then checks
// F(w) - F(v) <= rho h(z - (t-1) tau) + 1e-12 at every epoch. The radius is
// max(2 ||w0 - w*||, the farthest iterate seen).
DivergenceGapReport VerifyDivergenceBound(const QuadraticProblem& problem, int tau, double eta,
                                         int rounds);

void WriteDivergenceGapCsv(const DivergenceGapReport& report, std::ostream& out);

}  // namespace hybridfl

#endif  // HYBRIDFL_ANALYSIS_H_
