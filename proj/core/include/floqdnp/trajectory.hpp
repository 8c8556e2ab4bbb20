// Copyright 2026 The floqdnp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FLOQDNP_TRAJECTORY_HPP_
#define FLOQDNP_TRAJECTORY_HPP_

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "floqdnp/sequence.hpp"

namespace floqdnp {

// Interaction-frame electron trajectory S~_z(t) = X S_x + Y S_y + Z S_z,
// sampled at t_i = i T_c / N.
struct TrajectoryGrid {
  double cycle_time = 0.0;  // s
  int samples = 0;
  double offset = 0.0;  // rad/s
  std::vector<double> x, y, z;
  // Index of the sequence element active at each sample, and whether it is
  // a pulse.
  std::vector<int> element;
  std::vector<std::uint8_t> in_pulse;

  double time(int i) const { return cycle_time * static_cast<double>(i) / samples; }
};

inline constexpr int kMinTrajectorySamples = 1024;

// Exact piecewise propagation; every sample is evaluated from the propagator
// at the start of its element, so refining the grid never perturbs existing
// samples. Requires N >= 1024 and N % 4 == 0 (DomainError otherwise).
TrajectoryGrid interaction_frame_trajectory(const PulseSequence& seq, double offset, int samples);

// U(T_c) of the electron drive alone, for cyclicity checks.
Eigen::Matrix2cd electron_cycle_propagator(const PulseSequence& seq, double offset);

// out[i] = v(t_i + sign T_c/4), a cyclic shift by N/4. sign must be +1 or -1.
std::vector<double> quarter_shift(std::span<const double> v, int sign);

// out[i] = v((N - i) mod N), i.e. v(T_c - t).
std::vector<double> time_reverse(std::span<const double> v);

// Columns t_s, X, Y, Z.
void write_trajectory_csv(std::ostream& out, const TrajectoryGrid& traj);

}  // namespace floqdnp

#endif  // FLOQDNP_TRAJECTORY_HPP_
