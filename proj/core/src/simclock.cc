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

#include "hybridfl/errors.h"

namespace hybridfl {

double TrainTime(double samples, int tau, double bps, double cpb, double speed_ghz) {
  if (!(speed_ghz > 0.0)) throw DomainError("client speed must be positive");
  return samples * tau * bps * cpb / (speed_ghz * 1e9);
}

double CommTime(double msize_bits, double bandwidth_mhz, double snr) {
  if (!(bandwidth_mhz > 0.0)) throw DomainError("client bandwidth must be positive");
  if (!(snr > 0.0)) throw DomainError("SNR must be positive");
  return 3.0 * msize_bits / (bandwidth_mhz * 1e6 * std::log2(1.0 + snr));
}

double CloudEdgeTime(double msize_bits, int m, double br_bps, bool parallel_backhaul) {
  if (!(br_bps > 0.0)) throw DomainError("cloud-edge bit rate must be positive");
  if (m <= 0) return 0.0;
  const double edges = parallel_backhaul ? 1.0 : static_cast<double>(m);
  return 3.0 * msize_bits * edges / br_bps;
}

double StragglerLimit(double mean_partition, double speed_mean, double speed_std,
                      double bw_mean, double bw_std, const TimingParams& timing) {
  const double speed = speed_mean - 3.0 * speed_std;
  const double bw = bw_mean - 3.0 * bw_std;
  if (!(speed > 0.0)) throw ConfigError("straggler speed mean - 3 std must be positive");
  if (!(bw > 0.0)) throw ConfigError("straggler bandwidth mean - 3 std must be positive");
  return TrainTime(mean_partition, timing.tau, timing.bps, timing.cpb, speed) +
         CommTime(timing.msize_bits, bw, timing.snr);
}

double RoundLength(double window, double c2e2c) {
  if (window < 0.0) throw DomainError("compute window must be >= 0");
  return c2e2c + window;
}

double DeviceEnergy(double comm_seconds, double train_seconds, double speed_ghz,
                    double p_trans, double p_comp_base) {
  if (comm_seconds < 0.0 || train_seconds < 0.0) throw DomainError("active times must be >= 0");
  return p_trans * comm_seconds + p_comp_base * speed_ghz * speed_ghz * speed_ghz * train_seconds;
}

}  // namespace hybridfl
