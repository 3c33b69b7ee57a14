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

#ifndef HYBRIDFL_MODEL_H_
#define HYBRIDFL_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "hybridfl/dataset.h"

namespace hybridfl {

enum class LossKind { kMse, kNll };

// Fully connected net: input -> hidden (tanh) ... -> output (linear).
// With no hidden layers it is a plain linear / softmax-linear model.
// Under kNll the output layer produces class logits.
struct Architecture {
  int input = 1;
  std::vector<int> hidden;
  int output = 1;

  std::size_t ParameterCount() const;
  bool operator==(const Architecture&) const = default;
};

// Parameters live in one flat vector: per layer, the (out x in) weight matrix
// in column-major order followed by the bias vector.
struct ModelParams {
  Architecture arch;
  Eigen::VectorXd theta;

  bool operator==(const ModelParams& other) const {
    return arch == other.arch && theta == other.theta;
  }
};

// Uniform in [-0.5, 0.5] / sqrt(fan_in) for weights and biases.
ModelParams InitializeParams(const Architecture& arch, std::uint64_t seed);

// Network outputs, one row per sample.
Eigen::MatrixXd Forward(const ModelParams& params, const Eigen::MatrixXd& x);

struct LossAndGradient {
  double loss = 0.0;
  Eigen::VectorXd gradient;
};

// Mean per-sample loss over `data` and its exact gradient with respect to
// `theta` (back-propagation).
LossAndGradient ComputeLossAndGradient(const ModelParams& params,
                                       const Dataset& data, LossKind loss);
double ComputeLoss(const ModelParams& params, const Dataset& data, LossKind loss);

// Per-sample losses, used by tests and by the analysis module's oracles.
Eigen::VectorXd PerSampleLoss(const ModelParams& params, const Dataset& data,
                              LossKind loss);

}  // namespace hybridfl

#endif  // HYBRIDFL_MODEL_H_
