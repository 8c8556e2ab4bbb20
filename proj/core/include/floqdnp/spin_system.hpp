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

#ifndef FLOQDNP_SPIN_SYSTEM_HPP_
#define FLOQDNP_SPIN_SYSTEM_HPP_

// Spin-system file format:
//
//   omega_0n_hz = 15000000
//   offset_hz = 0                          # optional, electron offset
//   nucleus d_hz=37000 theta_deg=powder    # point dipole, powder averaged
//   nucleus d_hz=37000 theta_deg=54.7      # point dipole, fixed angle
//   nucleus a_z_hz=0 a_x_hz=37000          # explicit components
//   coupling i=1 j=2 d_hz=20000            # nuclei numbered from 1

#include <filesystem>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace floqdnp {

inline constexpr int kMaxNuclei = 5;

enum class HyperfineKind { components, dipolar, powder };

struct Nucleus {
  HyperfineKind kind = HyperfineKind::components;
  double a_z = 0.0;    // rad/s, components only
  double a_x = 0.0;    // rad/s, components only
  double d = 0.0;      // rad/s, dipolar magnitude
  double theta = 0.0;  // rad, dipolar only

  static Nucleus components(double a_z, double a_x) {
    return {HyperfineKind::components, a_z, a_x, 0.0, 0.0};
  }
  static Nucleus dipolar(double d, double theta) {
    return {HyperfineKind::dipolar, 0.0, 0.0, d, theta};
  }
  static Nucleus powder(double d) { return {HyperfineKind::powder, 0.0, 0.0, d, 0.0}; }

  bool operator==(const Nucleus&) const = default;
};

// Homonuclear coupling d (2 IzIz - IxIx - IyIy) between nuclei i < j (0-based).
struct Coupling {
  int i = 0;
  int j = 0;
  double d = 0.0;  // rad/s

  bool operator==(const Coupling&) const = default;
};

// (A_z, A_x) = (d (3 cos^2 theta - 1), 3 d sin theta cos theta).
std::pair<double, double> point_dipole(double d, double theta);

struct SpinSystem {
  double omega_0n = 0.0;  // rad/s
  double offset = 0.0;    // rad/s
  std::vector<Nucleus> nuclei;
  std::vector<Coupling> couplings;

  int n_nuclei() const noexcept { return static_cast<int>(nuclei.size()); }
  int n_spins() const noexcept { return 1 + n_nuclei(); }
  Eigen::Index dim() const noexcept { return Eigen::Index{1} << n_spins(); }
  bool has_powder() const;

  // (A_z, A_x) of nucleus i; throws DomainError for an unresolved powder nucleus.
  std::pair<double, double> hyperfine(int i) const;

  // Powder nuclei placed at polar angle theta; everything else unchanged.
  SpinSystem at_orientation(double theta) const;

  // Coupling between nuclei i and j, symmetric in (i, j); 0 if absent.
  double coupling(int i, int j) const;

  // Nuclei without a hyperfine channel: reached only by spin diffusion.
  // Falls back to all nuclei when every nucleus is hyperfine coupled.
  std::vector<int> bath() const;

  bool operator==(const SpinSystem&) const = default;
};

// DomainError for 0 or more than five nuclei, a Hilbert dimension above 64,
// self or out-of-range couplings, duplicate pairs and non-finite values.
void validate(const SpinSystem& sys);

// Throws ParseError for malformed text; DomainError from validate().
SpinSystem parse_spin_system(std::string_view document);
SpinSystem load_spin_system(const std::filesystem::path& path);

}  // namespace floqdnp

#endif  // FLOQDNP_SPIN_SYSTEM_HPP_
