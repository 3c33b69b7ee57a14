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

#include "hybridfl/aggregation.h"

#include <numeric>

#include "hybridfl/errors.h"

namespace hybridfl {

Eigen::VectorXd RegionalAggregate(std::span<const Eigen::VectorXd* const> fresh,
                                  const Eigen::VectorXd& cache,
                                  std::span<const std::size_t> sizes) {
  if (fresh.size() != sizes.size()) throw DomainError("one size per client slot required");
  const std::size_t total = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  if (total == 0) throw DomainError("region holds no data");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(cache.size());
  double cache_weight = 0.0;
  for (std::size_t i = 0; i < fresh.size(); ++i) {
    const double w = static_cast<double>(sizes[i]) / static_cast<double>(total);
    if (fresh[i] != nullptr) {
      out += w * *fresh[i];
    } else {
      cache_weight += w;
    }
  }
  if (cache_weight > 0.0) out += cache_weight * cache;
  return out;
}

std::size_t Edc(std::span<const int> submitted, std::span<const std::size_t> client_sizes) {
  std::size_t edc = 0;
  for (int id : submitted) edc += client_sizes[static_cast<std::size_t>(id)];
  return edc;
}

double EdcTotal(std::span<const double> region_edc) {
  return std::accumulate(region_edc.begin(), region_edc.end(), 0.0);
}

Eigen::VectorXd CloudAggregate(std::span<const Eigen::VectorXd> regional,
                               std::span<const double> region_edc,
                               const Eigen::VectorXd& previous_global) {
  if (regional.size() != region_edc.size()) throw DomainError("one EDC per regional model required");
  for (double e : region_edc) {
    if (e < 0.0) throw DomainError("EDC must be >= 0");
  }
  const double total = EdcTotal(region_edc);
  if (total <= 0.0) return previous_global;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(previous_global.size());
  for (std::size_t r = 0; r < regional.size(); ++r) {
    if (region_edc[r] > 0.0) out += (region_edc[r] / total) * regional[r];
  }
  return out;
}

std::vector<std::vector<double>> FlattenWeights(
    std::span<const double> region_edc,
    const std::vector<std::vector<std::size_t>>& sizes_by_region) {
  if (region_edc.size() != sizes_by_region.size()) throw DomainError("one EDC per region required");
  const double total = EdcTotal(region_edc);
  if (!(total > 0.0)) throw DomainError("EDC = 0: no submissions to weight");
  std::vector<std::vector<double>> gamma(sizes_by_region.size());
  for (std::size_t r = 0; r < sizes_by_region.size(); ++r) {
    const auto& sizes = sizes_by_region[r];
    const std::size_t region_total = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
    gamma[r].assign(sizes.size(), 0.0);
    if (region_edc[r] == 0.0) continue;
    if (region_total == 0) throw DomainError("region with coverage holds no data");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      gamma[r][i] = (region_edc[r] / total) *
                    (static_cast<double>(sizes[i]) / static_cast<double>(region_total));
    }
  }
  return gamma;
}

Eigen::VectorXd WeightedAverage(std::span<const Eigen::VectorXd* const> models,
                                std::span<const std::size_t> sizes) {
  if (models.empty() || models.size() != sizes.size()) {
    throw DomainError("weighted average needs one size per model and at least one model");
  }
  const std::size_t total = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  if (total == 0) throw DomainError("weighted average over zero samples");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(models.front()->size());
  for (std::size_t i = 0; i < models.size(); ++i) {
    out += (static_cast<double>(sizes[i]) / static_cast<double>(total)) * *models[i];
  }
  return out;
}

}  // namespace hybridfl
