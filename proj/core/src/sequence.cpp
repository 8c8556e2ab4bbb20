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

#include "floqdnp/sequence.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "floqdnp/errors.hpp"
#include "floqdnp/spin_ops.hpp"

namespace floqdnp {

namespace {

constexpr double kCycleTolerance = 1e-12;
constexpr double kWeightTolerance = 1e-9;

SequenceTemplate make_pulsepol_template(Variant variant) {
  const double central = variant == Variant::qpulsepol ? 0.0 : 180.0;
  std::vector<ElementTemplate> half = {
      ElementTemplate::pulse(90, 90),  ElementTemplate::delay(0.125),
      ElementTemplate::pulse(180, central), ElementTemplate::delay(0.125),
      ElementTemplate::pulse(90, 90),  ElementTemplate::pulse(90, 0),
      ElementTemplate::delay(0.125),   ElementTemplate::pulse(180, 90),
      ElementTemplate::delay(0.125),   ElementTemplate::pulse(90, 0),
  };
  SequenceTemplate t;
  t.name = std::string(to_string(variant));
  t.variant = variant;
  t.body = half;
  t.body.insert(t.body.end(), half.begin(), half.end());
  return t;
}

PulseElement realize_pulse(const ElementTemplate& rec, double omega_1) {
  PulseElement e;
  e.kind = ElementKind::pulse;
  e.flip_angle = deg_to_rad(rec.angle_deg);
  e.phase = deg_to_rad(normalize_degrees(rec.phase_deg));
  e.duration = e.flip_angle / omega_1;
  return e;
}

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::pulsepol: return "pulsepol";
    case Variant::qpulsepol: return "qpulsepol";
    case Variant::novel: return "novel";
    case Variant::custom: return "custom";
  }
  return "custom";
}

std::optional<Variant> variant_from_string(std::string_view name) {
  for (Variant v : {Variant::pulsepol, Variant::qpulsepol, Variant::novel, Variant::custom}) {
    if (to_string(v) == name) return v;
  }
  return std::nullopt;
}

double PulseSequence::total_pulse_time() const {
  double t = 0.0;
  for (const auto& e : elements) {
    if (e.is_pulse()) t += e.duration;
  }
  return t;
}

double PulseSequence::total_rotation() const {
  double r = 0.0;
  for (const auto& e : elements) {
    if (e.is_pulse()) r += e.flip_angle;
  }
  return r;
}

double PulseSequence::total_duration() const {
  double t = 0.0;
  for (const auto& e : elements) t += e.duration;
  return t;
}

double deg_to_rad(double deg) { return deg * kRadPerDeg; }

double normalize_degrees(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  if (r >= 360.0) r = 0.0;
  return r;
}

double finiteness_factor(double omega_1, double omega_0n, int k) {
  return omega_1 * static_cast<double>(k) / (4.0 * omega_0n);
}

const SequenceTemplate& pulsepol_template(Variant variant) {
  static const SequenceTemplate pulsepol = make_pulsepol_template(Variant::pulsepol);
  static const SequenceTemplate qpulsepol = make_pulsepol_template(Variant::qpulsepol);
  if (variant == Variant::pulsepol) return pulsepol;
  if (variant == Variant::qpulsepol) return qpulsepol;
  throw std::invalid_argument("pulsepol_template: variant must be pulsepol or qpulsepol");
}

PulseSequence instantiate(const SequenceTemplate& tmpl, double omega_0n, int k, double drive,
                          DriveInput input) {
  if (!(omega_0n > 0.0) || !std::isfinite(omega_0n)) {
    throw DomainError("nuclear Larmor frequency must be positive");
  }
  if (!(drive > 0.0) || !std::isfinite(drive)) {
    throw DomainError(input == DriveInput::finiteness ? "finiteness factor must be positive"
                                                      : "nutation frequency must be positive");
  }
  if (k < 0) throw DomainError("harmonic k must be non-negative");
  if (tmpl.body.empty()) throw DomainError("sequence has no elements");

  PulseSequence seq;
  seq.name = tmpl.name;
  seq.variant = tmpl.variant;
  seq.omega_0n = omega_0n;
  seq.k = k;
  seq.drive_input = input;

  if (k == 0) {
    // Spin-lock sequence: no cycle resonance, the cycle is what the pulses span.
    if (input != DriveInput::nutation) {
      throw DomainError("k = 0 sequences need an explicit nutation frequency");
    }
    seq.omega_1 = drive;
    double total = 0.0;
    for (const auto& rec : tmpl.body) {
      if (rec.kind == ElementKind::delay) {
        throw DomainError("delays need a resonant cycle (k >= 1)");
      }
      if (rec.angle_deg < 0.0) throw DomainError("negative duration");
      seq.elements.push_back(realize_pulse(rec, seq.omega_1));
      total += seq.elements.back().duration;
    }
    if (!(total > 0.0)) throw DomainError("sequence has zero duration");
    seq.cycle_time = total;
    seq.cycle_frequency = kTwoPi / total;
    seq.finiteness = seq.omega_1 * total / (8.0 * kPi);
    seq.tau = 0.0;
    return seq;
  }

  seq.cycle_frequency = omega_0n / static_cast<double>(k);
  seq.cycle_time = kTwoPi / seq.cycle_frequency;
  if (input == DriveInput::finiteness) {
    seq.finiteness = drive;
    seq.omega_1 = 4.0 * drive * seq.cycle_frequency;
  } else {
    seq.omega_1 = drive;
    seq.finiteness = finiteness_factor(drive, omega_0n, k);
  }

  double pulse_time = 0.0;
  double weight_sum = 0.0;
  bool has_delay = false;
  for (const auto& rec : tmpl.body) {
    if (rec.kind == ElementKind::pulse) {
      if (rec.angle_deg < 0.0) throw DomainError("negative duration");
      pulse_time += deg_to_rad(rec.angle_deg) / seq.omega_1;
    } else {
      if (rec.weight < 0.0) throw DomainError("negative duration");
      weight_sum += rec.weight;
      has_delay = true;
    }
  }
  double free = seq.cycle_time - pulse_time;
  if (std::abs(free) <= kCycleTolerance * seq.cycle_time) free = 0.0;
  if (free < 0.0) {
    throw DomainError("pulses overflow cycle: total pulse time exceeds T_c");
  }
  if (free > 0.0 && !has_delay) throw DomainError("cycle underfilled: no delays to fill T_c");
  if (has_delay && weight_sum < 1.0 - kWeightTolerance) {
    throw DomainError("cycle underfilled: delay weights sum to " + std::to_string(weight_sum));
  }
  if (has_delay && weight_sum > 1.0 + kWeightTolerance) {
    throw DomainError("cycle overfilled: delay weights sum to " + std::to_string(weight_sum));
  }

  for (const auto& rec : tmpl.body) {
    if (rec.kind == ElementKind::pulse) {
      seq.elements.push_back(realize_pulse(rec, seq.omega_1));
    } else {
      PulseElement e;
      e.kind = ElementKind::delay;
      e.weight = rec.weight;
      e.duration = rec.weight * free;
      seq.elements.push_back(e);
    }
  }
  seq.tau = 0.5 * free;
  return seq;
}

PulseSequence build_pulsepol(double omega_0n, int k, double f, Variant variant) {
  if (variant != Variant::pulsepol && variant != Variant::qpulsepol) {
    throw std::invalid_argument("build_pulsepol: variant must be pulsepol or qpulsepol");
  }
  if (!(omega_0n > 0.0)) throw DomainError("nuclear Larmor frequency must be positive");
  if (k < 1 || k % 2 == 0) throw DomainError("harmonic k must be odd and positive");
  if (!(f >= 1.0)) throw DomainError("pulses overflow cycle: finiteness factor f must be >= 1");
  return instantiate(pulsepol_template(variant), omega_0n, k, f, DriveInput::finiteness);
}

PulseSequence build_novel(double omega_0n, double lock_duration) {
  if (!(omega_0n > 0.0) || !std::isfinite(omega_0n)) {
    throw DomainError("nuclear Larmor frequency must be positive");
  }
  if (!(lock_duration >= 0.0) || !std::isfinite(lock_duration)) {
    throw DomainError("lock duration must be non-negative");
  }
  SequenceTemplate t;
  t.name = "novel";
  t.variant = Variant::novel;
  t.body.push_back(ElementTemplate::pulse(90, 0));
  if (lock_duration > 0.0) {
    // Lock angle goes through degrees so the preset matches its own file form.
    t.body.push_back(ElementTemplate::pulse(omega_0n * lock_duration / kRadPerDeg, 90));
  }
  return instantiate(t, omega_0n, 0, omega_0n, DriveInput::nutation);
}

std::vector<Diagnostic> validate_structure(const PulseSequence& seq) {
  std::vector<Diagnostic> out;
  for (std::size_t i = 0; i < seq.elements.size(); ++i) {
    const auto& e = seq.elements[i];
    if (!std::isfinite(e.duration) || e.duration < 0.0) {
      out.push_back({DiagnosticCode::negative_duration,
                     "negative duration in element " + std::to_string(i + 1), i});
    }
  }
  return out;
}

std::vector<Diagnostic> validate(const PulseSequence& seq) {
  std::vector<Diagnostic> out;
  if (seq.elements.empty()) {
    out.push_back({DiagnosticCode::empty_sequence, "sequence has no elements", std::nullopt});
    return out;
  }
  if (!(seq.omega_0n > 0.0) || !(seq.omega_1 > 0.0) || !std::isfinite(seq.omega_0n) ||
      !std::isfinite(seq.omega_1)) {
    out.push_back({DiagnosticCode::non_positive_frequency,
                   "omega_0n and omega_1 must be positive", std::nullopt});
  }
  if (seq.k < 0) {
    out.push_back({DiagnosticCode::invalid_harmonic, "harmonic k must be non-negative", std::nullopt});
  }

  const double tc = seq.cycle_time;
  for (std::size_t i = 0; i < seq.elements.size(); ++i) {
    const auto& e = seq.elements[i];
    const std::string where = " (element " + std::to_string(i + 1) + ")";
    if (!std::isfinite(e.duration) || e.duration < 0.0) {
      out.push_back({DiagnosticCode::negative_duration, "negative duration" + where, i});
    }
    if (e.is_pulse()) {
      if (std::abs(e.duration - e.flip_angle / seq.omega_1) > kCycleTolerance * tc) {
        out.push_back({DiagnosticCode::pulse_duration_mismatch,
                       "pulse duration differs from flip_angle / omega_1" + where, i});
      }
      if (!(e.phase >= 0.0 && e.phase < kTwoPi)) {
        out.push_back({DiagnosticCode::phase_not_normalized, "phase outside [0, 2 pi)" + where, i});
      }
    }
  }

  const double total = seq.total_duration();
  if (total < tc - kCycleTolerance * tc) {
    out.push_back({DiagnosticCode::cycle_underfilled,
                   "cycle underfilled: element durations sum below T_c", std::nullopt});
  } else if (total > tc + kCycleTolerance * tc) {
    out.push_back({DiagnosticCode::cycle_overfilled,
                   "cycle overfilled: element durations sum above T_c", std::nullopt});
  }
  if (!(tc > 0.0) ||
      std::abs(seq.cycle_frequency - kTwoPi / tc) > kCycleTolerance * seq.cycle_frequency) {
    out.push_back({DiagnosticCode::cycle_frequency_mismatch,
                   "cycle frequency differs from 2 pi / T_c", std::nullopt});
  }
  if (seq.k >= 1) {
    const double target = kTwoPi * static_cast<double>(seq.k);
    if (std::abs(seq.omega_0n * tc - target) > kCycleTolerance * target) {
      out.push_back({DiagnosticCode::resonance_violated,
                     "resonance condition violated: omega_0n != k omega_c", std::nullopt});
    }
  } else if (seq.k == 0 && std::abs(seq.omega_1 - seq.omega_0n) > kCycleTolerance * seq.omega_0n) {
    out.push_back({DiagnosticCode::matching_violated,
                   "matching condition violated: omega_1 != omega_0n", std::nullopt});
  }
  const double expected_f = seq.omega_1 * tc / (8.0 * kPi);
  if (!(std::abs(seq.finiteness - expected_f) <= kCycleTolerance * std::abs(expected_f))) {
    out.push_back({DiagnosticCode::finiteness_mismatch,
                   "finiteness mismatch: f != omega_1 / (4 omega_c)", std::nullopt});
  }
  return out;
}

}  // namespace floqdnp
