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

#include "hybridfl/model.h"

#include <cmath>
#include <random>

#include "hybridfl/errors.h"
#include "hybridfl/rng.h"

namespace hybridfl {
namespace {

struct Layer {
  int in;
  int out;
  Eigen::Index weight_offset;
  Eigen::Index bias_offset;
};

std::vector<Layer> Layers(const Architecture& arch) {
  std::vector<Layer> layers;
  int in = arch.input;
  Eigen::Index offset = 0;
  auto add = [&](int out) {
    Layer layer{in, out, offset, offset + static_cast<Eigen::Index>(in) * out};
    offset = layer.bias_offset + out;
    layers.push_back(layer);
    in = out;
  };
  for (int h : arch.hidden) add(h);
  add(arch.output);
  return layers;
}

using ConstMatMap = Eigen::Map<const Eigen::MatrixXd>;
using ConstVecMap = Eigen::Map<const Eigen::VectorXd>;

ConstMatMap Weights(const Eigen::VectorXd& theta, const Layer& l) {
  return ConstMatMap(theta.data() + l.weight_offset, l.out, l.in);
}
ConstVecMap Bias(const Eigen::VectorXd& theta, const Layer& l) {
  return ConstVecMap(theta.data() + l.bias_offset, l.out);
}

void CheckShapes(const ModelParams& params, const Dataset& data, LossKind loss) {
  if (static_cast<std::size_t>(params.theta.size()) != params.arch.ParameterCount()) {
    throw DomainError("parameter vector does not match the architecture");
  }
  if (data.dim() != params.arch.input) {
    throw DomainError("dataset feature count does not match the model input");
  }
  if (loss == LossKind::kMse && params.arch.output != 1) {
    throw DomainError("MSE loss expects a single regression output");
  }
  if (loss == LossKind::kNll && data.task != TaskKind::kClassification) {
    throw DomainError("NLL loss needs classification targets");
  }
  if (loss == LossKind::kMse && data.task != TaskKind::kRegression) {
    throw DomainError("MSE loss needs regression targets");
  }
}

// Activations of every layer; activations[0] is the input.
std::vector<Eigen::MatrixXd> ForwardAll(const ModelParams& params,
                                        const Eigen::MatrixXd& x) {
  const auto layers = Layers(params.arch);
  std::vector<Eigen::MatrixXd> acts;
  acts.reserve(layers.size() + 1);
  acts.push_back(x);
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    Eigen::MatrixXd z = acts.back() * Weights(params.theta, l).transpose();
    z.rowwise() += Bias(params.theta, l).transpose();
    if (i + 1 < layers.size()) z = z.array().tanh().matrix();
    acts.push_back(std::move(z));
  }
  return acts;
}

// Row-wise log-softmax.
Eigen::MatrixXd LogSoftmax(const Eigen::MatrixXd& logits) {
  Eigen::VectorXd row_max = logits.rowwise().maxCoeff();
  Eigen::MatrixXd shifted = logits.colwise() - row_max;
  Eigen::VectorXd log_norm =
      shifted.array().exp().rowwise().sum().log().matrix();
  return shifted.colwise() - log_norm;
}

}  // namespace

std::size_t Architecture::ParameterCount() const {
  std::size_t count = 0;
  int in = input;
  for (int h : hidden) {
    count += static_cast<std::size_t>(in) * h + h;
    in = h;
  }
  count += static_cast<std::size_t>(in) * output + output;
  return count;
}

ModelParams InitializeParams(const Architecture& arch, std::uint64_t seed) {
  ModelParams params{arch, Eigen::VectorXd(static_cast<Eigen::Index>(arch.ParameterCount()))};
  Rng rng = Substream(seed, "model/init");
  std::uniform_real_distribution<double> unit(-0.5, 0.5);
  for (const auto& l : Layers(arch)) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(l.in));
    const Eigen::Index end = l.bias_offset + l.out;
    for (Eigen::Index i = l.weight_offset; i < end; ++i) params.theta[i] = unit(rng) * scale;
  }
  return params;
}

Eigen::MatrixXd Forward(const ModelParams& params, const Eigen::MatrixXd& x) {
  return std::move(ForwardAll(params, x).back());
}

Eigen::VectorXd PerSampleLoss(const ModelParams& params, const Dataset& data,
                              LossKind loss) {
  CheckShapes(params, data, loss);
  Eigen::MatrixXd out = Forward(params, data.features);
  if (loss == LossKind::kMse) {
    return (out.col(0) - data.targets).array().square().matrix();
  }
  Eigen::MatrixXd logp = LogSoftmax(out);
  Eigen::VectorXd losses(out.rows());
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    losses[i] = -logp(i, static_cast<Eigen::Index>(std::lround(data.targets[i])));
  }
  return losses;
}

double ComputeLoss(const ModelParams& params, const Dataset& data, LossKind loss) {
  if (data.empty()) throw DomainError("cannot evaluate a loss on an empty dataset");
  return PerSampleLoss(params, data, loss).mean();
}

LossAndGradient ComputeLossAndGradient(const ModelParams& params,
                                       const Dataset& data, LossKind loss) {
  CheckShapes(params, data, loss);
  if (data.empty()) throw DomainError("cannot train on an empty dataset");
  const auto layers = Layers(params.arch);
  const auto acts = ForwardAll(params, data.features);
  const double n = static_cast<double>(data.size());
  const Eigen::MatrixXd& out = acts.back();

  LossAndGradient result;
  Eigen::MatrixXd delta;
  if (loss == LossKind::kMse) {
    Eigen::VectorXd residual = out.col(0) - data.targets;
    result.loss = residual.squaredNorm() / n;
    delta = (2.0 / n) * residual;
  } else {
    Eigen::MatrixXd logp = LogSoftmax(out);
    delta = logp.array().exp().matrix();
    double total = 0.0;
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      auto label = static_cast<Eigen::Index>(std::lround(data.targets[i]));
      total -= logp(i, label);
      delta(i, label) -= 1.0;
    }
    result.loss = total / n;
    delta /= n;
  }

  result.gradient.resize(params.theta.size());
  for (std::size_t k = layers.size(); k-- > 0;) {
    const auto& l = layers[k];
    const Eigen::MatrixXd& input = acts[k];
    Eigen::Map<Eigen::MatrixXd>(result.gradient.data() + l.weight_offset, l.out, l.in) =
        delta.transpose() * input;
    Eigen::Map<Eigen::VectorXd>(result.gradient.data() + l.bias_offset, l.out) =
        delta.colwise().sum().transpose();
    if (k > 0) {
      Eigen::MatrixXd back = delta * Weights(params.theta, l);
      delta = back.array() * (1.0 - input.array().square());
    }
  }
  return result;
}

}  // namespace hybridfl
