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

#ifndef HYBRIDFL_SIMCLOCK_H_
#define HYBRIDFL_SIMCLOCK_H_

#include <cstddef>

namespace hybridfl {

// Closed-form timing and energy models. Client speed is given in GHz and
// bandwidth in MHz; everything else is SI (bits, bits/s, seconds, joules).
struct TimingParams {
  double msize_bits = 4e7;
  double br_bps = 1e9;      // cloud-edge bit rate
  double snr = 100.0;
  double bps = 384.0;       // bits per sample
  double cpb = 300.0;       // CPU cycles per bit
  int tau = 5;
  double p_trans = 0.5;     // W
  double p_comp_base = 0.7; // W at 1 GHz
};

// |D_k| * tau * BPS * CPB / (s_k * 1e9).
double TrainTime(double samples, int tau, double bps, double cpb, double speed_ghz);

// 3 * msize / (bw * log2(1 + SNR)); download once, upload at half rate.
double CommTime(double msize_bits, double bandwidth_mhz, double snr);

// 3 * msize * m / BR. With a parallel backhaul every edge transfers
// concurrently and the factor m drops out.
double CloudEdgeTime(double msize_bits, int m, double br_bps,
                     bool parallel_backhaul = false);

// Response-time ceiling: the time an average-partition client running at
// mean - 3 std speed and bandwidth needs to train and communicate.
double StragglerLimit(double mean_partition, double speed_mean, double speed_std,
                      double bw_mean, double bw_std, const TimingParams& timing);

// T_c2e2c + compute window. The caller caps the window at T_lim.
double RoundLength(double window, double c2e2c);

// P_trans * T_comm + P_comp_base * s^3 * T_train, s in GHz.
double DeviceEnergy(double comm_seconds, double train_seconds, double speed_ghz,
                    double p_trans, double p_comp_base);

}  // namespace hybridfl

#endif  // HYBRIDFL_SIMCLOCK_H_
