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

#include "hybridfl/rng.h"

namespace hybridfl {
namespace {

// splitmix64 finalizer.
std::uint64_t Mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t HashName(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t DeriveSeed(std::uint64_t root, std::string_view name,
                         std::initializer_list<std::uint64_t> indices) {
  std::uint64_t state = Mix(root) ^ Mix(HashName(name));
  for (std::uint64_t index : indices) state = Mix(state ^ Mix(index + 1));
  return Mix(state);
}

double SamplePositiveGaussian(double mean, double stddev, Rng& rng) {
  if (stddev <= 0.0) return mean > 0.0 ? mean : mean / 100.0;
  std::normal_distribution<double> dist(mean, stddev);
  for (int attempt = 0; attempt < 100; ++attempt) {
    double x = dist(rng);
    if (x > 0.0) return x;
  }
  return mean / 100.0;
}

}  // namespace hybridfl
