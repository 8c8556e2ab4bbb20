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

#ifndef FLOQDNP_SEQUENCE_HPP_
#define FLOQDNP_SEQUENCE_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace floqdnp {

enum class ElementKind { pulse, delay };

enum class Variant { pulsepol, qpulsepol, novel, custom };

std::string_view to_string(Variant v);
std::optional<Variant> variant_from_string(std::string_view name);

// One piece of a modulation cycle. Pulses are rectangular: constant nutation
// omega_1 at a fixed phase, so duration == flip_angle / omega_1. Delays carry
// the share `weight` of the cycle's free-precession time.
struct PulseElement {
  ElementKind kind = ElementKind::delay;
  double flip_angle = 0.0;  // rad
  double phase = 0.0;       // rad, in [0, 2 pi)
  double duration = 0.0;    // s
  double weight = 0.0;

  bool is_pulse() const noexcept { return kind == ElementKind::pulse; }
  bool operator==(const PulseElement&) const = default;
};

// A body record as written in sequence files: degrees and delay weights,
// independent of the drive strength.
struct ElementTemplate {
  ElementKind kind = ElementKind::delay;
  double angle_deg = 0.0;
  double phase_deg = 0.0;
  double weight = 0.0;

  static ElementTemplate pulse(double angle_deg, double phase_deg) {
    return {ElementKind::pulse, angle_deg, phase_deg, 0.0};
  }
  static ElementTemplate delay(double weight) { return {ElementKind::delay, 0.0, 0.0, weight}; }
};

struct SequenceTemplate {
  std::string name;
  Variant variant = Variant::custom;
  std::vector<ElementTemplate> body;
};

// Which drive parameter was given independently; the other one is derived.
enum class DriveInput { finiteness, nutation };

// One modulation cycle. For cycle-resonant sequences (k >= 1) the cycle time
// is fixed by omega_0n = k omega_c. Spin-lock sequences (NOVEL) use k == 0:
// the cycle is the plain sum of its elements and the matching condition is
// omega_1 == omega_0n.
struct PulseSequence {
  std::string name;
  Variant variant = Variant::custom;
  double omega_1 = 0.0;   // rad/s
  double omega_0n = 0.0;  // rad/s
  int k = 0;
  double finiteness = 0.0;
  DriveInput drive_input = DriveInput::finiteness;
  std::vector<PulseElement> elements;
  double cycle_time = 0.0;       // s
  double cycle_frequency = 0.0;  // rad/s
  double tau = 0.0;              // free precession per half-block, s

  double total_pulse_time() const;
  double total_rotation() const;
  double total_duration() const;

  bool operator==(const PulseSequence&) const = default;
};

// deg * (pi / 180) as a single rounding step; every angle entering a sequence
// goes through this so templates and parsed files agree bit-for-bit.
double deg_to_rad(double deg);
inline constexpr double kRadPerDeg = 3.14159265358979323846 / 180.0;

// Reduces to [0, 360).
double normalize_degrees(double deg);

// f = omega_1 / (4 omega_c) with omega_c = omega_0n / k. Units cancel.
double finiteness_factor(double omega_1, double omega_0n, int k);

// Full 360-degree cycle: two half-blocks of
//   (pi/2)_phi1 - tau/4 - (pi)_c - tau/4 - (pi/2)_phi1 (pi/2)_phi2 - tau/4 - (pi)_Y - tau/4 - (pi/2)_phi2
// with phi1 = Y, phi2 = X and c = -X (PulsePol) or +X (Q-PulsePol).
const SequenceTemplate& pulsepol_template(Variant variant);

// Realizes a template on a resonant cycle. Pulse durations follow from
// omega_1; delays share T_c minus the total pulse time by weight. Throws
// DomainError when the template cannot fill the cycle.
PulseSequence instantiate(const SequenceTemplate& tmpl, double omega_0n, int k, double drive,
                          DriveInput input);

// variant must be pulsepol or qpulsepol; k odd and positive; f >= 1.
PulseSequence build_pulsepol(double omega_0n, int k, double f, Variant variant);

// pi/2 flip about X, then a spin lock along Y at omega_1 = omega_0n.
PulseSequence build_novel(double omega_0n, double lock_duration);

enum class DiagnosticCode {
  empty_sequence,
  non_positive_frequency,
  invalid_harmonic,
  negative_duration,
  pulse_duration_mismatch,
  phase_not_normalized,
  cycle_underfilled,
  cycle_overfilled,
  cycle_frequency_mismatch,
  resonance_violated,
  matching_violated,
  finiteness_mismatch,
};

struct Diagnostic {
  DiagnosticCode code;
  std::string message;
  std::optional<std::size_t> element;
};

// Empty iff every PulseSequence invariant holds.
std::vector<Diagnostic> validate(const PulseSequence& seq);

// Only the checks needed to propagate: finite, non-negative durations.
std::vector<Diagnostic> validate_structure(const PulseSequence& seq);

}  // namespace floqdnp

#endif  // FLOQDNP_SEQUENCE_HPP_
