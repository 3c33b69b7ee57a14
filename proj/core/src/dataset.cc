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

#include "hybridfl/dataset.h"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "hybridfl/errors.h"
#include "hybridfl/rng.h"

namespace hybridfl {

std::vector<int> Dataset::Labels() const {
  std::vector<int> labels(size());
  for (std::size_t i = 0; i < size(); ++i) {
    labels[i] = static_cast<int>(std::lround(targets[static_cast<Eigen::Index>(i)]));
  }
  return labels;
}

Dataset Dataset::Subset(std::span<const std::size_t> rows) const {
  Dataset out;
  out.task = task;
  out.num_classes = num_classes;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
  out.targets.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto src = static_cast<Eigen::Index>(rows[i]);
    auto dst = static_cast<Eigen::Index>(i);
    out.features.row(dst) = features.row(src);
    out.targets[dst] = targets[src];
  }
  return out;
}

Dataset ParseAerofoil(std::istream& in) {
  std::vector<std::array<double, 6>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::array<double, 6> row{};
    for (double& v : row) {
      if (!(fields >> v)) {
        throw ParseError("aerofoil line " + std::to_string(line_no) +
                             ": expected 6 numeric columns",
                         line_no);
      }
    }
    std::string extra;
    if (fields >> extra) {
      throw ParseError("aerofoil line " + std::to_string(line_no) +
                           ": more than 6 columns",
                       line_no);
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw ParseError("aerofoil data is empty: 0 rows read", line_no);

  Dataset data;
  data.task = TaskKind::kRegression;
  data.features.resize(static_cast<Eigen::Index>(rows.size()), 5);
  data.targets.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto r = static_cast<Eigen::Index>(i);
    for (int j = 0; j < 5; ++j) data.features(r, j) = rows[i][static_cast<std::size_t>(j)];
    data.targets[r] = rows[i][5];
  }
  StandardizeFeatures(data);
  const double n = static_cast<double>(data.size());
  const double mean = data.targets.sum() / n;
  data.targets.array() -= mean;
  const double var = data.targets.squaredNorm() / n;
  if (var > 0.0) data.targets /= std::sqrt(var);
  return data;
}

Dataset LoadAerofoil(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open aerofoil data file '" + path + "'");
  return ParseAerofoil(in);
}

void StandardizeFeatures(Dataset& data) {
  if (data.empty()) return;
  const double n = static_cast<double>(data.size());
  for (Eigen::Index j = 0; j < data.features.cols(); ++j) {
    auto col = data.features.col(j);
    const double mean = col.sum() / n;
    col.array() -= mean;
    const double var = col.squaredNorm() / n;
    if (var > 0.0) col /= std::sqrt(var);
  }
}

Dataset SynthesizeRegression(std::size_t samples, int dim, double noise_std,
                             std::uint64_t seed) {
  Rng rng = Substream(seed, "synthetic/regression");
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd weights(dim);
  for (int j = 0; j < dim; ++j) weights[j] = normal(rng);
  const double bias = normal(rng);

  Dataset data;
  data.task = TaskKind::kRegression;
  data.features.resize(static_cast<Eigen::Index>(samples), dim);
  data.targets.resize(static_cast<Eigen::Index>(samples));
  for (Eigen::Index i = 0; i < data.features.rows(); ++i) {
    for (int j = 0; j < dim; ++j) data.features(i, j) = normal(rng);
    double noise = noise_std > 0.0 ? noise_std * normal(rng) : 0.0;
    data.targets[i] = data.features.row(i).dot(weights) + bias + noise;
  }
  return data;
}

Dataset SynthesizeClassification(std::size_t samples, int dim, int classes,
                                 double noise_std, std::uint64_t seed) {
  Rng rng = Substream(seed, "synthetic/classification");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd prototypes(classes, dim);
  for (int c = 0; c < classes; ++c) {
    for (int j = 0; j < dim; ++j) prototypes(c, j) = unit(rng);
  }

  Dataset data;
  data.task = TaskKind::kClassification;
  data.num_classes = classes;
  data.features.resize(static_cast<Eigen::Index>(samples), dim);
  data.targets.resize(static_cast<Eigen::Index>(samples));
  for (Eigen::Index i = 0; i < data.features.rows(); ++i) {
    const int label = static_cast<int>(i % classes);
    data.targets[i] = label;
    for (int j = 0; j < dim; ++j) {
      data.features(i, j) = prototypes(label, j) + noise_std * normal(rng);
    }
  }
  return data;
}

}  // namespace hybridfl
