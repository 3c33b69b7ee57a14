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

#include "hybridfl/analysis.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <random>
#include <string>

#include "hybridfl/aggregation.h"
#include "hybridfl/errors.h"
#include "hybridfl/rng.h"

namespace hybridfl {
namespace {

void CheckSnapshot(const ObjectiveSnapshot& snapshot) {
  if (snapshot.gamma.size() != snapshot.clients.size() || snapshot.clients.empty()) {
    throw DomainError("snapshot needs one gamma per client");
  }
  const double total = std::accumulate(snapshot.gamma.begin(), snapshot.gamma.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("gamma must sum to 1");
}

double SpectralNorm(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

ClientObjective MakeModelObjective(const Architecture& arch, const Dataset& data, LossKind loss) {
  auto shared = std::make_shared<const Dataset>(data);
  ClientObjective objective;
  objective.loss = [arch, shared, loss](const Eigen::VectorXd& w) {
    return ComputeLoss(ModelParams{arch, w}, *shared, loss);
  };
  objective.gradient = [arch, shared, loss](const Eigen::VectorXd& w) {
    return ComputeLossAndGradient(ModelParams{arch, w}, *shared, loss).gradient;
  };
  return objective;
}

double GlobalObjective(const Eigen::VectorXd& w, const ObjectiveSnapshot& snapshot) {
  CheckSnapshot(snapshot);
  double total = 0.0;
  for (std::size_t k = 0; k < snapshot.clients.size(); ++k) {
    if (snapshot.gamma[k] != 0.0) total += snapshot.gamma[k] * snapshot.clients[k].loss(w);
  }
  return total;
}

Eigen::VectorXd GlobalGradient(const Eigen::VectorXd& w, const ObjectiveSnapshot& snapshot) {
  CheckSnapshot(snapshot);
  Eigen::VectorXd total = Eigen::VectorXd::Zero(w.size());
  for (std::size_t k = 0; k < snapshot.clients.size(); ++k) {
    if (snapshot.gamma[k] != 0.0) total += snapshot.gamma[k] * snapshot.clients[k].gradient(w);
  }
  return total;
}

double EstimateDivergence(const ObjectiveSnapshot& snapshot,
                          std::span<const Eigen::VectorXd> probes) {
  if (probes.empty()) throw DomainError("divergence estimate needs at least one probe");
  double worst = 0.0;
  for (const auto& w : probes) {
    const Eigen::VectorXd global = GlobalGradient(w, snapshot);
    for (const auto& client : snapshot.clients) {
      worst = std::max(worst, (client.gradient(w) - global).norm());
    }
  }
  return worst;
}

double HBar(double x, double eta, double beta, double delta_bar) {
  if (!(beta > 0.0)) throw DomainError("beta must be > 0");
  if (x < 0.0) throw DomainError("h_bar needs x >= 0");
  return (delta_bar / beta) * (std::pow(eta * beta + 1.0, x) - 1.0) - eta * delta_bar * x;
}

double DivergenceBound(int z, int t, int tau, const BoundParameters& params) {
  if (tau < 1 || t < 1) throw DomainError("round and tau must be >= 1");
  const long long start = static_cast<long long>(t - 1) * tau;
  if (z <= start || z > start + tau) {
    throw DomainError("epoch " + std::to_string(z) + " is outside round " + std::to_string(t));
  }
  const double x = static_cast<double>(z - start);
  return std::max(0.0, params.rho * HBar(x, params.eta, params.beta, params.delta_bar));
}

ConvergenceResult ConvergenceBound(int t, const BoundParameters& params) {
  if (t < 1) throw DomainError("convergence bound needs t >= 1");
  ConvergenceResult result;
  result.cond1_eta_le_inv_beta = params.eta * params.beta <= 1.0;
  const double progress = params.omega * params.eta * (1.0 - params.beta * params.eta / 2.0);
  const double penalty = params.rho * HBar(params.tau, params.eta, params.beta, params.delta_bar) /
                         (params.tau * params.epsilon * params.epsilon);
  const double denominator = progress - penalty;
  result.cond2_positive_denominator = denominator > 0.0;
  if (result.cond2_positive_denominator) {
    result.bound = 1.0 / (static_cast<double>(t) * params.tau * denominator);
  }
  return result;
}

QuadraticClient QuadraticClient::FromSamples(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  if (x.rows() == 0 || x.rows() != y.size()) throw DomainError("quadratic client needs samples");
  const double n = static_cast<double>(x.rows());
  QuadraticClient client;
  client.a = x.transpose() * x / n;
  client.b = x.transpose() * y / n;
  client.c = y.squaredNorm() / n;
  return client;
}

double QuadraticClient::Loss(const Eigen::VectorXd& w) const {
  return w.dot(a * w) - 2.0 * b.dot(w) + c;
}

Eigen::VectorXd QuadraticClient::Gradient(const Eigen::VectorXd& w) const {
  return 2.0 * (a * w - b);
}

Eigen::VectorXd QuadraticProblem::Optimum() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim(), dim());
  Eigen::VectorXd b = Eigen::VectorXd::Zero(dim());
  for (std::size_t k = 0; k < clients.size(); ++k) {
    a += gamma[k] * clients[k].a;
    b += gamma[k] * clients[k].b;
  }
  return a.ldlt().solve(b);
}

ObjectiveSnapshot QuadraticProblem::Snapshot() const {
  ObjectiveSnapshot snapshot;
  snapshot.gamma = gamma;
  for (const auto& client : clients) {
    snapshot.clients.push_back(
        {[client](const Eigen::VectorXd& w) { return client.Loss(w); },
         [client](const Eigen::VectorXd& w) { return client.Gradient(w); }});
  }
  snapshot.w_star = Optimum();
  return snapshot;
}

QuadraticProblem RandomQuadraticProblem(int clients, int dim, std::uint64_t seed) {
  if (clients < 1 || dim < 1) throw DomainError("need at least one client and one dimension");
  Rng rng = Substream(seed, "analysis/quadratic");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> scale(0.5, 1.5);
  std::uniform_int_distribution<int> samples(3, 10);

  QuadraticProblem problem;
  std::vector<std::size_t> sizes;
  for (int k = 0; k < clients; ++k) {
    const int n = samples(rng);
    const double s = scale(rng);
    Eigen::VectorXd w_true(dim);
    for (int j = 0; j < dim; ++j) w_true(j) = 2.0 * normal(rng);
    Eigen::MatrixXd x(n, dim);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < dim; ++j) x(i, j) = s * normal(rng);
      y(i) = x.row(i).dot(w_true) + 0.1 * normal(rng);
    }
    problem.clients.push_back(QuadraticClient::FromSamples(x, y));
    sizes.push_back(static_cast<std::size_t>(n));
  }

  const int edges = std::max(1, std::min(clients, 1 + static_cast<int>(rng() % 3)));
  std::vector<std::vector<std::size_t>> by_region(static_cast<std::size_t>(edges));
  std::vector<std::vector<int>> members(static_cast<std::size_t>(edges));
  for (int k = 0; k < clients; ++k) {
    const auto r = static_cast<std::size_t>(k % edges);
    by_region[r].push_back(sizes[static_cast<std::size_t>(k)]);
    members[r].push_back(k);
  }
  std::vector<double> edc(static_cast<std::size_t>(edges), 0.0);
  for (std::size_t r = 0; r < by_region.size(); ++r) {
    for (std::size_t s : by_region[r]) {
      if (rng() % 2 == 0) edc[r] += static_cast<double>(s);
    }
    if (edc[r] == 0.0) edc[r] = static_cast<double>(by_region[r].front());
  }
  const auto gamma = FlattenWeights(edc, by_region);
  problem.gamma.assign(static_cast<std::size_t>(clients), 0.0);
  for (std::size_t r = 0; r < members.size(); ++r) {
    for (std::size_t i = 0; i < members[r].size(); ++i) {
      problem.gamma[static_cast<std::size_t>(members[r][i])] = gamma[r][i];
    }
  }
  problem.w0.resize(dim);
  for (int j = 0; j < dim; ++j) problem.w0(j) = 3.0 * normal(rng);
  return problem;
}

BoundParameters QuadraticConstants(const QuadraticProblem& problem, double radius, double eta,
                                   int tau) {
  const int d = problem.dim();
  Eigen::MatrixXd a_bar = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t k = 0; k < problem.clients.size(); ++k) {
    a_bar += problem.gamma[k] * problem.clients[k].a;
  }
  const Eigen::VectorXd w_star = problem.Optimum();

  BoundParameters params;
  params.eta = eta;
  params.tau = tau;
  for (const auto& client : problem.clients) {
    params.beta = std::max(params.beta, 2.0 * SpectralNorm(client.a));
  }
  params.beta = std::max(params.beta, 2.0 * SpectralNorm(a_bar));
  params.rho = 2.0 * SpectralNorm(a_bar) * radius;
  for (std::size_t k = 0; k < problem.clients.size(); ++k) {
    const auto& client = problem.clients[k];
    // grad F_k(w) - grad F(w) = grad F_k(w*) + 2 (A_k - A) (w - w*).
    const double at_optimum = client.Gradient(w_star).norm();
    const double delta_k = at_optimum + 2.0 * SpectralNorm(client.a - a_bar) * radius;
    params.delta_bar = std::max(params.delta_bar, delta_k);
  }
  return params;
}

DivergenceGapReport VerifyDivergenceBound(const QuadraticProblem& problem, int tau, double eta,
                                         int rounds) {
  if (tau < 1 || rounds < 0) throw DomainError("tau >= 1 and rounds >= 0 required");
  if (problem.clients.size() != problem.gamma.size()) {
    throw DomainError("one gamma per client required");
  }
  const Eigen::VectorXd w_star = problem.Optimum();
  const auto global_loss = [&](const Eigen::VectorXd& w) {
    double f = 0.0;
    for (std::size_t k = 0; k < problem.clients.size(); ++k) {
      f += problem.gamma[k] * problem.clients[k].Loss(w);
    }
    return f;
  };
  const auto global_grad = [&](const Eigen::VectorXd& w) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(w.size());
    for (std::size_t k = 0; k < problem.clients.size(); ++k) {
      g += problem.gamma[k] * problem.clients[k].Gradient(w);
    }
    return g;
  };

  DivergenceGapReport report;
  double farthest = 2.0 * (problem.w0 - w_star).norm();
  const auto track = [&](const Eigen::VectorXd& w) {
    farthest = std::max(farthest, (w - w_star).norm());
  };

  Eigen::VectorXd w = problem.w0;
  std::vector<Eigen::VectorXd> local(problem.clients.size());
  for (int t = 1; t <= rounds; ++t) {
    for (auto& wk : local) wk = w;
    Eigen::VectorXd v = w;
    for (int x = 1; x <= tau; ++x) {
      Eigen::VectorXd aggregate = Eigen::VectorXd::Zero(w.size());
      for (std::size_t k = 0; k < local.size(); ++k) {
        local[k] -= eta * problem.clients[k].Gradient(local[k]);
        aggregate += problem.gamma[k] * local[k];
        track(local[k]);
      }
      v -= eta * global_grad(v);
      track(v);
      track(aggregate);
      DivergenceGapRow row;
      row.round = t;
      row.epoch = (t - 1) * tau + x;
      row.gap = global_loss(aggregate) - global_loss(v);
      report.rows.push_back(row);
      if (x == tau) w = aggregate;
    }
  }

  report.radius = farthest;
  report.params = QuadraticConstants(problem, farthest, eta, tau);
  if (eta * report.params.beta > 1.0) throw DomainError("eta must be <= 1/beta");
  report.pass = true;
  for (auto& row : report.rows) {
    row.bound = DivergenceBound(row.epoch, row.round, tau, report.params);
    report.max_gap = std::max(report.max_gap, row.gap);
    if (!(row.gap <= row.bound + 1e-12)) report.pass = false;
  }
  return report;
}

void WriteDivergenceGapCsv(const DivergenceGapReport& report, std::ostream& out) {
  out << "epoch,round,gap,bound\n";
  const auto old_precision = out.precision(17);
  for (const auto& row : report.rows) {
    out << row.epoch << ',' << row.round << ',' << row.gap << ',' << row.bound << '\n';
  }
  out.precision(old_precision);
}

}  // namespace hybridfl
