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

#ifndef HYBRIDFL_RNG_H_
#define HYBRIDFL_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace hybridfl {

using Rng = std::mt19937_64;

// Named, index-addressable random substreams derived from one root seed.
// Two streams with different (name, indices) are statistically independent,
// so adding draws to one stream never shifts another. Every random decision
// in the simulator goes through a substream; nothing shares engine state.
std::uint64_t DeriveSeed(std::uint64_t root, std::string_view name,
                         std::initializer_list<std::uint64_t> indices = {});

inline Rng Substream(std::uint64_t root, std::string_view name,
                     std::initializer_list<std::uint64_t> indices = {}) {
  return Rng(DeriveSeed(root, name, indices));
}

// Draws from N(mean, stddev^2) until a strictly positive value appears.
// After 100 rejected attempts the result is clamped to mean / 100.
double SamplePositiveGaussian(double mean, double stddev, Rng& rng);

}  // namespace hybridfl

#endif  // HYBRIDFL_RNG_H_
