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

#include "floqdnp/trajectory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "floqdnp/errors.hpp"
#include "floqdnp/spin_ops.hpp"
#include "floqdnp/text_format.hpp"

namespace floqdnp {

namespace {

Eigen::Vector3d drive_vector(const PulseElement& e, double omega_1, double offset) {
  if (!e.is_pulse()) return {0.0, 0.0, offset};
  return {omega_1 * std::cos(e.phase), omega_1 * std::sin(e.phase), offset};
}

void check_sequence(const PulseSequence& seq) {
  if (seq.elements.empty()) throw DomainError("invalid sequence: no elements");
  if (!(seq.cycle_time > 0.0) || !std::isfinite(seq.cycle_time)) {
    throw DomainError("invalid sequence: cycle time must be positive");
  }
  if (!(seq.omega_1 > 0.0) || !std::isfinite(seq.omega_1)) {
    throw DomainError("invalid sequence: nutation frequency must be positive");
  }
  const auto issues = validate_structure(seq);
  if (!issues.empty()) throw DomainError("invalid sequence: " + issues.front().message);
}

// Bloch components of U^dag S_z U, scaled so the trajectory is a unit vector.
Eigen::Vector3d frame_vector(const Eigen::Matrix2cd& u) {
  // U^dag sigma_z U = X sigma_x + Y sigma_y + Z sigma_z.
  const Complex a = u(0, 0), b = u(0, 1), c = u(1, 0), d = u(1, 1);
  const Complex m01 = std::conj(a) * b - std::conj(c) * d;  // X - iY
  const double z = std::norm(a) - std::norm(c);
  return {m01.real(), -m01.imag(), z};
}

}  // namespace

TrajectoryGrid interaction_frame_trajectory(const PulseSequence& seq, double offset, int samples) {
  if (samples < kMinTrajectorySamples || samples % 4 != 0) {
    throw DomainError("grid granularity: N must be a multiple of 4 and at least " +
                      std::to_string(kMinTrajectorySamples) + " (got " + std::to_string(samples) +
                      ")");
  }
  if (!std::isfinite(offset)) throw DomainError("offset must be finite");
  check_sequence(seq);

  TrajectoryGrid g;
  g.cycle_time = seq.cycle_time;
  g.samples = samples;
  g.offset = offset;
  g.x.resize(samples);
  g.y.resize(samples);
  g.z.resize(samples);
  g.element.resize(samples);
  g.in_pulse.resize(samples);

  const int last = static_cast<int>(seq.elements.size()) - 1;
  Eigen::Matrix2cd u_start = Eigen::Matrix2cd::Identity();
  double t_start = 0.0;
  int j = 0;
  for (int i = 0; i < samples; ++i) {
    const double t = g.time(i);
    // Advance to the element containing t; the last element absorbs rounding.
    while (j < last && t >= t_start + seq.elements[j].duration) {
      const auto& e = seq.elements[j];
      u_start = spin_rotation(drive_vector(e, seq.omega_1, offset), e.duration) * u_start;
      t_start += e.duration;
      ++j;
    }
    const auto& e = seq.elements[j];
    const Eigen::Matrix2cd u =
        spin_rotation(drive_vector(e, seq.omega_1, offset), t - t_start) * u_start;
    const Eigen::Vector3d v = frame_vector(u);
    g.x[i] = v.x();
    g.y[i] = v.y();
    g.z[i] = v.z();
    g.element[i] = j;
    g.in_pulse[i] = e.is_pulse() ? 1 : 0;
  }
  return g;
}

Eigen::Matrix2cd electron_cycle_propagator(const PulseSequence& seq, double offset) {
  check_sequence(seq);
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
  for (const auto& e : seq.elements) {
    u = spin_rotation(drive_vector(e, seq.omega_1, offset), e.duration) * u;
  }
  return u;
}

std::vector<double> quarter_shift(std::span<const double> v, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("quarter_shift: sign must be +1 or -1");
  const std::size_t n = v.size();
  if (n % 4 != 0) throw DomainError("grid granularity: N must be a multiple of 4");
  std::vector<double> out(n);
  const std::size_t shift = sign > 0 ? n / 4 : n - n / 4;
  for (std::size_t i = 0; i < n; ++i) out[i] = v[(i + shift) % n];
  return out;
}

std::vector<double> time_reverse(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = v[(n - i) % n];
  return out;
}

void write_trajectory_csv(std::ostream& out, const TrajectoryGrid& traj) {
  out << "t_s,X,Y,Z\n";
  for (int i = 0; i < traj.samples; ++i) {
    out << text::format_double(traj.time(i)) << ',' << text::format_double(traj.x[i]) << ','
        << text::format_double(traj.y[i]) << ',' << text::format_double(traj.z[i]) << '\n';
  }
}

}  // namespace floqdnp
