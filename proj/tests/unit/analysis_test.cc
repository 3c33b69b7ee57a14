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

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "hybridfl/errors.h"

namespace hybridfl {
namespace {

// F_k(w) = a_k (w - s_k)^2 in one dimension.
QuadraticClient Parabola(double a, double shift) {
  QuadraticClient q;
  q.a = Eigen::MatrixXd::Constant(1, 1, a);
  q.b = Eigen::VectorXd::Constant(1, a * shift);
  q.c = a * shift * shift;
  return q;
}

ClientObjective ToObjective(const QuadraticClient& q) {
  return {[q](const Eigen::VectorXd& w) { return q.Loss(w); },
          [q](const Eigen::VectorXd& w) { return q.Gradient(w); }};
}

TEST(HBarTest, ValuesAndShape) {
  EXPECT_NEAR(HBar(0.0, 0.01, 1.0, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(HBar(1.0, 0.01, 1.0, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(HBar(5.0, 0.01, 1.0, 1.0), 0.00101005, 1e-8);
  EXPECT_NEAR(HBar(5.0, 0.01, 1.0, 1.0), std::pow(1.01, 5) - 1.0 - 0.05, 1e-15);
  double previous = 0.0;
  for (int x = 1; x <= 20; ++x) {
    const double h = HBar(x, 0.05, 2.0, 0.3);
    EXPECT_GE(h, previous);
    previous = h;
  }
  EXPECT_THROW(HBar(1.0, 0.01, 0.0, 1.0), DomainError);
  EXPECT_THROW(HBar(-1.0, 0.01, 1.0, 1.0), DomainError);
}

TEST(DivergenceBoundTest, ScalesHBarByRho) {
  BoundParameters p;
  p.rho = 2.0;
  p.beta = 1.0;
  p.delta_bar = 1.0;
  p.eta = 0.01;
  p.tau = 5;
  EXPECT_NEAR(DivergenceBound(5, 1, 5, p), 0.0020201, 1e-8);
  EXPECT_NEAR(DivergenceBound(10, 2, 5, p), 0.0020201, 1e-8);
  EXPECT_NEAR(DivergenceBound(6, 2, 5, p), 0.0, 1e-15);
  EXPECT_THROW(DivergenceBound(5, 2, 5, p), DomainError);
  EXPECT_THROW(DivergenceBound(11, 2, 5, p), DomainError);
}

TEST(ConvergenceBoundTest, DecaysAsOneOverT) {
  BoundParameters p;
  p.rho = 1.0;
  p.beta = 1.0;
  p.delta_bar = 0.1;
  p.eta = 0.01;
  p.tau = 5;
  p.omega = 1.0;
  p.epsilon = 1.0;
  const auto one = ConvergenceBound(10, p);
  const auto two = ConvergenceBound(20, p);
  ASSERT_TRUE(one.bound && two.bound);
  EXPECT_TRUE(one.cond1_eta_le_inv_beta);
  EXPECT_TRUE(one.cond2_positive_denominator);
  EXPECT_NEAR(*two.bound, *one.bound / 2.0, 1e-12 * *one.bound);
  const double denom = 0.01 * (1.0 - 0.005) - HBar(5, 0.01, 1.0, 0.1) / 5.0;
  EXPECT_NEAR(*one.bound, 1.0 / (10 * 5 * denom), 1e-9);
}

TEST(ConvergenceBoundTest, ReportsViolatedConditions) {
  BoundParameters p;
  p.rho = 1e6;
  p.beta = 200.0;
  p.delta_bar = 10.0;
  p.eta = 0.01;
  p.tau = 10;
  p.omega = 1.0;
  p.epsilon = 0.1;
  const auto r = ConvergenceBound(1, p);
  EXPECT_FALSE(r.cond1_eta_le_inv_beta);
  EXPECT_FALSE(r.cond2_positive_denominator);
  EXPECT_FALSE(r.bound.has_value());
  EXPECT_THROW(ConvergenceBound(0, p), DomainError);
}

TEST(GlobalObjectiveTest, WeightedSumOfClients) {
  ObjectiveSnapshot snap;
  snap.gamma = {0.25, 0.75};
  snap.clients = {ToObjective(Parabola(1.0, 1.0)), ToObjective(Parabola(1.0, -1.0))};
  const Eigen::VectorXd w = Eigen::VectorXd::Zero(1);
  EXPECT_NEAR(GlobalObjective(w, snap), 1.0, 1e-15);
  EXPECT_NEAR(GlobalGradient(w, snap)[0], 0.25 * -2.0 + 0.75 * 2.0, 1e-15);
  snap.gamma = {0.5, 0.6};
  EXPECT_THROW(GlobalObjective(w, snap), DomainError);
  snap.gamma = {1.0};
  EXPECT_THROW(GlobalGradient(w, snap), DomainError);
}

TEST(EstimateDivergenceTest, ShiftedParabolas) {
  ObjectiveSnapshot snap;
  snap.gamma = {0.5, 0.5};
  snap.clients = {ToObjective(Parabola(1.0, 1.0)), ToObjective(Parabola(1.0, -1.0))};
  std::vector<Eigen::VectorXd> probes;
  for (double x : {-3.0, 0.0, 0.7, 5.0}) probes.push_back(Eigen::VectorXd::Constant(1, x));
  EXPECT_NEAR(EstimateDivergence(snap, probes), 2.0, 1e-12);
  EXPECT_THROW(EstimateDivergence(snap, {}), DomainError);
}

TEST(QuadraticClientTest, FromSamplesMatchesMeanSquaredError) {
  Eigen::MatrixXd x(3, 2);
  x << 1, 0, 0, 2, 1, 1;
  const Eigen::VectorXd y = Eigen::Vector3d(1.0, -1.0, 0.5);
  const auto q = QuadraticClient::FromSamples(x, y);
  const Eigen::VectorXd w = Eigen::Vector2d(0.3, -0.2);
  EXPECT_NEAR(q.Loss(w), (x * w - y).squaredNorm() / 3.0, 1e-14);
  const Eigen::VectorXd g = 2.0 * x.transpose() * (x * w - y) / 3.0;
  EXPECT_LE((q.Gradient(w) - g).norm(), 1e-14);
}

TEST(QuadraticProblemTest, OptimumZeroesGlobalGradient) {
  const QuadraticProblem p = RandomQuadraticProblem(6, 4, 11);
  double total = 0.0;
  for (double g : p.gamma) total += g;
  EXPECT_NEAR(total, 1.0, 1e-12);
  const auto snap = p.Snapshot();
  EXPECT_LE(GlobalGradient(p.Optimum(), snap).norm(), 1e-9);
}

TEST(DivergenceGapTest, SingleEpochRoundsHaveNoGap) {
  const QuadraticProblem p = RandomQuadraticProblem(5, 3, 4);
  const double beta = QuadraticConstants(p, 1.0, 0.0, 1).beta;
  const auto report = VerifyDivergenceBound(p, 1, 0.5 / beta, 30);
  EXPECT_TRUE(report.pass);
  for (const auto& row : report.rows) {
    EXPECT_NEAR(row.gap, 0.0, 1e-12);
    EXPECT_NEAR(row.bound, 0.0, 1e-12);
  }
}

TEST(DivergenceGapTest, TwoClientsWithDifferentCurvature) {
  QuadraticProblem p;
  p.clients = {Parabola(1.0, 1.0), Parabola(3.0, -1.0)};
  p.gamma = {0.5, 0.5};
  p.w0 = Eigen::VectorXd::Constant(1, 4.0);
  const auto report = VerifyDivergenceBound(p, 5, 0.05, 20);
  EXPECT_TRUE(report.pass);
  EXPECT_GT(report.max_gap, 0.0);
  EXPECT_EQ(report.rows.size(), 100u);
  std::ostringstream csv;
  WriteDivergenceGapCsv(report, csv);
  EXPECT_EQ(csv.str().substr(0, 22), "epoch,round,gap,bound\n");
}

TEST(DivergenceGapTest, RandomInstancesStayUnderBound) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const QuadraticProblem p = RandomQuadraticProblem(4, 3, seed);
    const double beta = QuadraticConstants(p, 1.0, 0.0, 1).beta;
    for (int tau : {2, 5}) {
      const auto report = VerifyDivergenceBound(p, tau, 0.5 / beta, 20);
      EXPECT_TRUE(report.pass) << "seed " << seed << " tau " << tau;
    }
  }
}

TEST(DivergenceGapTest, RejectsStepAboveInverseBeta) {
  const QuadraticProblem p = RandomQuadraticProblem(3, 2, 1);
  const double beta = QuadraticConstants(p, 1.0, 0.0, 1).beta;
  EXPECT_THROW(VerifyDivergenceBound(p, 2, 1.5 / beta, 3), DomainError);
}

TEST(ModelObjectiveTest, MatchesModelLoss) {
  const Dataset data = SynthesizeRegression(40, 3, 0.1, 5);
  const Architecture arch{3, {4}, 1};
  const auto objective = MakeModelObjective(arch, data, LossKind::kMse);
  const ModelParams params = InitializeParams(arch, 9);
  EXPECT_NEAR(objective.loss(params.theta), ComputeLoss(params, data, LossKind::kMse), 1e-12);
  EXPECT_EQ(objective.gradient(params.theta).size(), params.theta.size());
}

}  // namespace
}  // namespace hybridfl
