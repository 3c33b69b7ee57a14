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

#ifndef HYBRIDFL_TRAINER_H_
#define HYBRIDFL_TRAINER_H_

#include "hybridfl/dataset.h"
#include "hybridfl/model.h"

namespace hybridfl {

// Client-side update: `tau` full-batch gradient-descent steps on the mean
// loss of `data`, one step per epoch. Throws TrainingDiverged (carrying the
// 1-based epoch) if a gradient or the updated parameters stop being finite.
ModelParams LocalTrain(const ModelParams& params, const Dataset& data, int tau,
                       double eta, LossKind loss);

struct Evaluation {
  double loss = 0.0;
  // Accuracy for classification, coefficient of determination R^2 for
  // regression (can be negative for a model worse than the mean).
  double metric = 0.0;
  // sqrt(MSE) for regression; 0 for classification.
  double rmse = 0.0;
};

Evaluation Evaluate(const ModelParams& params, const Dataset& data, LossKind loss);

}  // namespace hybridfl

#endif  // HYBRIDFL_TRAINER_H_
