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

#ifndef FLOQDNP_SIMULATOR_HPP_
#define FLOQDNP_SIMULATOR_HPP_

#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "floqdnp/sequence.hpp"
#include "floqdnp/spin_ops.hpp"
#include "floqdnp/spin_system.hpp"

namespace floqdnp {

struct Drive {
  double omega_1 = 0.0;  // rad/s
  double phase = 0.0;    // rad
};

// Lab-frame Hamiltonian, electron on site 0:
//   Omega S_z + sum_i (A_z S_z I_z + A_x S_z I_x + omega_0n I_z)
//   + sum_{i<j} d_ij (2 I_z I_z - I_x I_x - I_y I_y) + omega_1 (S_x cos phi + S_y sin phi)
ComplexMatrix build_hamiltonian(const SpinSystem& sys, std::optional<Drive> drive = std::nullopt);

// Ordered product of exact segment exponentials over one cycle. The nuclear
// Larmor frequency comes from the system, timing and drive from the
// sequence, so a detuned sequence can be applied to a fixed system.
ComplexMatrix cycle_propagator(const SpinSystem& sys, const PulseSequence& seq);

// U^m by binary powering.
ComplexMatrix matrix_power(const ComplexMatrix& u, long long m);

enum class ElectronReset { off, on };

struct BuildupCurve {
  std::vector<double> times;            // s, macro-cycle boundaries from 0
  std::vector<double> sz;               // <S_z>
  std::vector<std::vector<double>> iz;  // iz[nucleus][time]

  // Running checks on the density matrix (worst case over all steps).
  double max_trace_defect = 0.0;
  double max_hermiticity_defect = 0.0;
  double min_eigenvalue = 0.0;

  // sum over `nuclei` of <I_z> at every recorded time.
  std::vector<double> summed(std::span<const int> nuclei) const;
};

struct BuildupSettings {
  double macro_cycle = 0.0;    // s, rounded to a whole number of cycles
  double total_contact = 0.0;  // s
  ElectronReset reset = ElectronReset::on;
};

// Polarized electron, unpolarized nuclei. The macro-cycle propagator is built
// once and applied repeatedly; with reset on, the electron is repolarized
// after every macro cycle while the nuclear reduced state is kept. Values are
// recorded at each boundary before the reset.
BuildupCurve simulate_buildup(const SpinSystem& sys, const PulseSequence& seq,
                              const BuildupSettings& settings);

struct OrientationGrid {
  std::vector<double> theta;   // rad
  std::vector<double> weight;  // sums to 1
};

// n midpoints uniform in cos(theta) on [-1, 1], equal weights.
OrientationGrid cos_uniform_grid(int n);
// n midpoints uniform in theta on [0, pi], weights proportional to sin(theta).
OrientationGrid theta_uniform_grid(int n);

// Weighted mean over orientations using pairwise summation, so the result
// does not depend on how orientation results are grouped.
BuildupCurve powder_average(const SpinSystem& sys, const PulseSequence& seq,
                            const OrientationGrid& grid, const BuildupSettings& settings);

// simulate_buildup for fixed systems, powder_average when any nucleus is
// powder averaged.
BuildupCurve simulate(const SpinSystem& sys, const PulseSequence& seq,
                      const BuildupSettings& settings, const OrientationGrid& grid);

struct OffsetPoint {
  double offset = 0.0;   // rad/s
  double bulk_iz = 0.0;  // sum of all nuclear <I_z> at the end of contact
};

// One buildup endpoint per offset, in grid order.
std::vector<OffsetPoint> offset_profile(const SpinSystem& sys, const PulseSequence& seq,
                                        std::span<const double> offsets,
                                        const BuildupSettings& settings,
                                        const OrientationGrid& grid);

// Pairwise (cascade) sum.
double pairwise_sum(std::span<const double> values);

// t_s, Sz, Iz_1..Iz_n
void write_buildup_csv(std::ostream& out, const BuildupCurve& curve);
// offset_hz, bulk_Iz
void write_offset_csv(std::ostream& out, std::span<const OffsetPoint> profile);

}  // namespace floqdnp

#endif  // FLOQDNP_SIMULATOR_HPP_
