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

#ifndef HYBRIDFL_AGGREGATION_H_
#define HYBRIDFL_AGGREGATION_H_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace hybridfl {

// Edge-level aggregation over every client of a region. `fresh[i]` points at
// client i's newly trained parameters, or is null when the client did not
// submit this round; such slots are filled with `cache` (last round's
// regional model). Weights are |D_k| / |D^r|.
Eigen::VectorXd RegionalAggregate(std::span<const Eigen::VectorXd* const> fresh,
                                  const Eigen::VectorXd& cache,
                                  std::span<const std::size_t> sizes);

// Effective data coverage: samples behind the fresh submissions.
std::size_t Edc(std::span<const int> submitted, std::span<const std::size_t> client_sizes);
double EdcTotal(std::span<const double> region_edc);

// Cloud aggregation weighted by EDC_r / EDC. Regions with EDC_r = 0 drop
// out of the average; when no region has coverage the previous global model
// is returned unchanged.
Eigen::VectorXd CloudAggregate(std::span<const Eigen::VectorXd> regional,
                               std::span<const double> region_edc,
                               const Eigen::VectorXd& previous_global);

// Per-client weights of the equivalent single-level average:
// gamma(k) = (EDC_r / EDC) * (|D_k| / |D^r|), nested as sizes_by_region.
// Throws DomainError when EDC = 0.
std::vector<std::vector<double>> FlattenWeights(
    std::span<const double> region_edc,
    const std::vector<std::vector<std::size_t>>& sizes_by_region);

// Sample-count weighted mean of `models` (plain FedAvg aggregation).
Eigen::VectorXd WeightedAverage(std::span<const Eigen::VectorXd* const> models,
                                std::span<const std::size_t> sizes);

}  // namespace hybridfl

#endif  // HYBRIDFL_AGGREGATION_H_
