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

#include "hybridfl/simclock.h"

#include <cmath>

#include <gtest/gtest.h>

#include "hybridfl/errors.h"

namespace hybridfl {
namespace {

TimingParams Task2Timing() {
  TimingParams t;
  t.msize_bits = 8e7;
  t.snr = 100.0;
  t.bps = 6272.0;
  t.cpb = 400.0;
  t.tau = 5;
  return t;
}

TEST(TrainTimeTest, HandValues) {
  EXPECT_NEAR(TrainTime(100, 5, 384, 300, 0.5), 0.11520, 1e-12);
  EXPECT_NEAR(TrainTime(140, 5, 6272, 400, 0.1), 17.5616, 1e-9);
  EXPECT_EQ(TrainTime(0, 5, 384, 300, 0.5), 0.0);
}

TEST(TrainTimeTest, RejectsNonPositiveSpeed) {
  EXPECT_THROW(TrainTime(100, 5, 384, 300, 0.0), DomainError);
  EXPECT_THROW(TrainTime(100, 5, 384, 300, -1.0), DomainError);
}

TEST(CommTimeTest, HandValues) {
  // 3 * 8e7 / (1e5 * log2(101)); 360.456 is the value with the rate
  // rounded to 665,821 bit/s.
  EXPECT_NEAR(CommTime(8e7, 0.1, 100), 3 * 8e7 / (1e5 * std::log2(101.0)), 1e-9);
  EXPECT_NEAR(CommTime(8e7, 0.1, 100), 360.456, 2e-3);
  EXPECT_NEAR(CommTime(4e7, 0.5, 100), 36.046, 1e-3);
  EXPECT_EQ(CommTime(0, 0.5, 100), 0.0);
  EXPECT_THROW(CommTime(4e7, 0.0, 100), DomainError);
  EXPECT_THROW(CommTime(4e7, 0.5, 0.0), DomainError);
}

TEST(CommTimeTest, DecreasesWithBandwidthAndSnr) {
  EXPECT_GT(CommTime(4e7, 0.4, 100), CommTime(4e7, 0.5, 100));
  EXPECT_GT(CommTime(4e7, 0.5, 50), CommTime(4e7, 0.5, 100));
}

TEST(CloudEdgeTimeTest, SerialAndParallel) {
  EXPECT_NEAR(CloudEdgeTime(8e7, 10, 1e9, false), 2.40, 1e-12);
  EXPECT_NEAR(CloudEdgeTime(8e7, 10, 1e9, true), 0.24, 1e-12);
  EXPECT_EQ(CloudEdgeTime(8e7, 0, 1e9, false), 0.0);
  EXPECT_THROW(CloudEdgeTime(8e7, 3, 0.0, false), DomainError);
}

TEST(StragglerLimitTest, Task2Reconstruction) {
  EXPECT_NEAR(StragglerLimit(140, 1.0, 0.3, 1.0, 0.3, Task2Timing()), 378.02, 0.01);
}

TEST(StragglerLimitTest, Task1Reconstruction) {
  TimingParams t;
  EXPECT_NEAR(StragglerLimit(100.2, 0.5, 0.1, 0.5, 0.1, t), 90.40, 0.05);
}

TEST(StragglerLimitTest, HomogeneousFleetIsOwnCompletionTime) {
  TimingParams t;
  const double own = TrainTime(80, t.tau, t.bps, t.cpb, 0.7) + CommTime(t.msize_bits, 0.6, t.snr);
  EXPECT_DOUBLE_EQ(StragglerLimit(80, 0.7, 0.0, 0.6, 0.0, t), own);
}

TEST(StragglerLimitTest, NonPositiveStragglerIsConfigError) {
  TimingParams t;
  EXPECT_THROW(StragglerLimit(100, 0.3, 0.1, 0.5, 0.1, t), ConfigError);
  EXPECT_THROW(StragglerLimit(100, 0.5, 0.1, 0.3, 0.1, t), ConfigError);
}

TEST(RoundLengthTest, Sum) {
  EXPECT_DOUBLE_EQ(RoundLength(20.0, 0.06), 20.06);
  EXPECT_THROW(RoundLength(-1.0, 0.0), DomainError);
}

TEST(DeviceEnergyTest, HandValues) {
  EXPECT_NEAR(DeviceEnergy(0.0, 0.1152, 0.5, 0.5, 0.7), 0.010080, 1e-12);
  EXPECT_NEAR(DeviceEnergy(36.046, 0.0, 0.5, 0.5, 0.7), 18.023, 1e-12);
  EXPECT_EQ(DeviceEnergy(0.0, 0.0, 0.5, 0.5, 0.7), 0.0);
  EXPECT_GT(DeviceEnergy(1.0, 1.0, 0.5, 0.5, 0.7), DeviceEnergy(1.0, 0.5, 0.5, 0.5, 0.7));
  EXPECT_THROW(DeviceEnergy(-1.0, 0.0, 0.5, 0.5, 0.7), DomainError);
}

}  // namespace
}  // namespace hybridfl
