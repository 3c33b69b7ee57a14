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

#include "hybridfl/trainer.h"

#include <cmath>

#include "hybridfl/errors.h"

namespace hybridfl {

ModelParams LocalTrain(const ModelParams& params, const Dataset& data, int tau,
                       double eta, LossKind loss) {
  if (data.empty()) throw DomainError("local training needs a nonempty partition");
  if (tau < 1) throw DomainError("tau must be >= 1");
  if (!(eta >= 0.0)) throw DomainError("eta must be >= 0");
  ModelParams out = params;
  if (eta == 0.0) return out;
  for (int epoch = 1; epoch <= tau; ++epoch) {
    LossAndGradient lg = ComputeLossAndGradient(out, data, loss);
    if (!lg.gradient.allFinite()) throw TrainingDiverged(epoch);
    out.theta -= eta * lg.gradient;
    if (!out.theta.allFinite()) throw TrainingDiverged(epoch);
  }
  return out;
}

Evaluation Evaluate(const ModelParams& params, const Dataset& data, LossKind loss) {
  if (data.empty()) throw DomainError("cannot evaluate on an empty dataset");
  Evaluation eval;
  Eigen::MatrixXd out = Forward(params, data.features);
  const double n = static_cast<double>(data.size());
  if (loss == LossKind::kMse) {
    if (out.cols() != 1) throw DomainError("MSE loss expects a single regression output");
    const double sse = (out.col(0) - data.targets).squaredNorm();
    const double mean = data.targets.mean();
    const double sst = (data.targets.array() - mean).square().sum();
    eval.loss = sse / n;
    eval.rmse = std::sqrt(eval.loss);
    eval.metric = sst > 0.0 ? 1.0 - sse / sst : (sse == 0.0 ? 1.0 : 0.0);
    return eval;
  }
  eval.loss = PerSampleLoss(params, data, loss).mean();
  Eigen::Index correct = 0;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    Eigen::Index best = 0;
    out.row(i).maxCoeff(&best);
    if (best == static_cast<Eigen::Index>(std::lround(data.targets[i]))) ++correct;
  }
  eval.metric = static_cast<double>(correct) / n;
  return eval;
}

}  // namespace hybridfl
