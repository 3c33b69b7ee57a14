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

#ifndef HYBRIDFL_DATASET_H_
#define HYBRIDFL_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hybridfl {

enum class TaskKind { kRegression, kClassification };

// Row-per-sample feature matrix with one target per row. For classification
// the target holds the class id as a double.
struct Dataset {
  Eigen::MatrixXd features;
  Eigen::VectorXd targets;
  TaskKind task = TaskKind::kRegression;
  int num_classes = 0;

  std::size_t size() const { return static_cast<std::size_t>(targets.size()); }
  int dim() const { return static_cast<int>(features.cols()); }
  bool empty() const { return targets.size() == 0; }

  std::vector<int> Labels() const;
  Dataset Subset(std::span<const std::size_t> rows) const;
};

// Whitespace-separated 6-column table: five features then the target.
// Features and the target are standardized to zero mean and unit variance.
Dataset LoadAerofoil(const std::string& path);
Dataset ParseAerofoil(std::istream& in);

// Standardizes every feature column in place (population moments). Constant
// columns are only centered.
void StandardizeFeatures(Dataset& data);

// targets = x . w + b + N(0, noise_std^2) with x ~ N(0, I); w and b are drawn
// once from the seed. Features come out standardized by construction.
Dataset SynthesizeRegression(std::size_t samples, int dim, double noise_std,
                             std::uint64_t seed);

// Balanced classes; each sample is its class prototype (entries in [0, 1],
// like normalized pixels) plus N(0, noise_std^2) per feature.
Dataset SynthesizeClassification(std::size_t samples, int dim, int classes,
                                 double noise_std, std::uint64_t seed);

}  // namespace hybridfl

#endif  // HYBRIDFL_DATASET_H_
