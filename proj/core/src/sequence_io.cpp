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

#include "floqdnp/sequence_io.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "floqdnp/errors.hpp"
#include "floqdnp/spin_ops.hpp"
#include "floqdnp/text_format.hpp"

namespace floqdnp {

namespace {

constexpr double kWeightTolerance = 1e-9;

struct HeaderValue {
  std::string value;
  int line = 0;
  int column = 0;
};

double positive(const HeaderValue& h, std::string_view what) {
  const double v = text::parse_number(h.value, h.line, h.column);
  if (!(v > 0.0)) throw ParseError(std::string(what) + " must be positive", h.line, h.column);
  return v;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PulseSequence parse_sequence(std::string_view document) {
  std::optional<HeaderValue> name, variant, omega_0n, k, f, omega_1;
  SequenceTemplate tmpl;
  bool in_body = false;
  double weight_sum = 0.0;
  int delays = 0;

  for (const text::Line& line : text::tokenize(document)) {
    if (auto a = text::as_assignment(line)) {
      if (in_body) {
        throw ParseError("header key '" + std::string(a->key) + "' after body records", line.number,
                         a->key_column);
      }
      std::optional<HeaderValue>* slot = nullptr;
      if (a->key == "name") slot = &name;
      else if (a->key == "variant") slot = &variant;
      else if (a->key == "omega_0n_hz") slot = &omega_0n;
      else if (a->key == "k") slot = &k;
      else if (a->key == "f") slot = &f;
      else if (a->key == "omega_1_hz") slot = &omega_1;
      if (slot == nullptr) {
        throw ParseError("unknown header key '" + std::string(a->key) + "'", line.number,
                         a->key_column);
      }
      if (slot->has_value()) {
        throw ParseError("duplicate header key '" + std::string(a->key) + "'", line.number,
                         a->key_column);
      }
      if (a->value.empty()) {
        throw ParseError("empty value for '" + std::string(a->key) + "'", line.number,
                         a->value_column);
      }
      *slot = HeaderValue{a->value, line.number, a->value_column};
      continue;
    }

    in_body = true;
    const text::Token& kind = line.tokens.front();
    const auto fields = text::record_fields(line);
    auto find = [&](std::string_view key) -> const text::Field* {
      for (const auto& fld : fields) {
        if (fld.key == key) return &fld;
      }
      return nullptr;
    };
    auto reject_unknown = [&](std::initializer_list<std::string_view> allowed) {
      for (const auto& fld : fields) {
        bool ok = false;
        for (auto a : allowed) ok = ok || fld.key == a;
        if (!ok || find(fld.key) != &fld) {
          throw ParseError((ok ? "duplicate field '" : "unknown field '") + std::string(fld.key) +
                               "'",
                           line.number, fld.key_column);
        }
      }
    };

    if (kind.text == "pulse") {
      reject_unknown({"angle_deg", "phase_deg"});
      const text::Field* angle = find("angle_deg");
      if (angle == nullptr) throw ParseError("pulse needs angle_deg", line.number, kind.column);
      const double deg = text::parse_number(angle->value, line.number, angle->value_column);
      if (deg < 0.0) throw ParseError("negative duration", line.number, angle->value_column);
      double phase = 0.0;
      if (const text::Field* ph = find("phase_deg")) {
        phase = text::parse_number(ph->value, line.number, ph->value_column);
      }
      tmpl.body.push_back(ElementTemplate::pulse(deg, phase));
    } else if (kind.text == "delay") {
      reject_unknown({"weight"});
      const text::Field* w = find("weight");
      if (w == nullptr) throw ParseError("delay needs weight", line.number, kind.column);
      const double weight = text::parse_number(w->value, line.number, w->value_column);
      if (weight < 0.0) throw ParseError("negative duration", line.number, w->value_column);
      weight_sum += weight;
      ++delays;
      tmpl.body.push_back(ElementTemplate::delay(weight));
    } else {
      throw ParseError("unknown element kind '" + std::string(kind.text) + "'", line.number,
                       kind.column);
    }
  }

  if (!omega_0n) throw ParseError("missing header key 'omega_0n_hz'", 0, 0);
  if (!k) throw ParseError("missing header key 'k'", 0, 0);
  if (f.has_value() == omega_1.has_value()) {
    const HeaderValue* at = f ? &*f : nullptr;
    throw ParseError("exactly one of 'f' and 'omega_1_hz' is required", at ? at->line : 0, 0);
  }
  if (tmpl.body.empty()) throw ParseError("sequence has no elements", 0, 0);

  tmpl.name = name ? name->value : std::string("custom");
  if (variant) {
    const auto v = variant_from_string(variant->value);
    if (!v) {
      throw ParseError("unknown variant '" + variant->value + "'", variant->line, variant->column);
    }
    tmpl.variant = *v;
  }

  const double larmor = positive(*omega_0n, "omega_0n_hz") * kTwoPi;
  const long long harmonic = text::parse_integer(k->value, k->line, k->column);
  if (harmonic < 0 || harmonic > 100000) {
    throw ParseError("k must be a non-negative integer", k->line, k->column);
  }
  if (harmonic == 0 && f) {
    throw ParseError("k = 0 (spin lock) requires omega_1_hz instead of f", f->line, f->column);
  }
  if (harmonic == 0 && delays > 0) {
    throw ParseError("delay records need a resonant cycle (k >= 1)", 0, 0);
  }
  if (harmonic >= 1 && delays > 0) {
    if (weight_sum < 1.0 - kWeightTolerance) {
      throw ParseError("cycle underfilled: delay weights sum to " + text::format_double(weight_sum),
                       0, 0);
    }
    if (weight_sum > 1.0 + kWeightTolerance) {
      throw ParseError("cycle overfilled: delay weights sum to " + text::format_double(weight_sum),
                       0, 0);
    }
  }

  const DriveInput input = f ? DriveInput::finiteness : DriveInput::nutation;
  const double drive = f ? positive(*f, "f") : positive(*omega_1, "omega_1_hz") * kTwoPi;
  try {
    return instantiate(tmpl, larmor, static_cast<int>(harmonic), drive, input);
  } catch (const DomainError& e) {
    const std::string msg = e.what();
    // Fill problems are document errors; pulse overflow stays a domain error.
    if (msg.rfind("cycle underfilled", 0) == 0 || msg.rfind("cycle overfilled", 0) == 0 ||
        msg.rfind("negative duration", 0) == 0) {
      throw ParseError(msg, 0, 0);
    }
    throw;
  }
}

PulseSequence load_sequence(const std::filesystem::path& path) {
  return parse_sequence(read_text_file(path));
}

std::string serialize_sequence(const PulseSequence& seq) {
  if (seq.name.find_first_of("#\n\r") != std::string::npos) {
    throw std::invalid_argument("serialize_sequence: name contains '#' or a line break");
  }
  std::ostringstream out;
  out << "name = " << (seq.name.empty() ? "custom" : seq.name) << '\n';
  out << "variant = " << to_string(seq.variant) << '\n';
  out << "omega_0n_hz = " << text::format_scaled(seq.omega_0n, kTwoPi) << '\n';
  out << "k = " << seq.k << '\n';
  if (seq.drive_input == DriveInput::finiteness) {
    out << "f = " << text::format_double(seq.finiteness) << '\n';
  } else {
    out << "omega_1_hz = " << text::format_scaled(seq.omega_1, kTwoPi) << '\n';
  }
  for (const auto& e : seq.elements) {
    if (e.is_pulse()) {
      out << "pulse angle_deg=" << text::format_scaled(e.flip_angle, kRadPerDeg)
          << " phase_deg=" << text::format_scaled(e.phase, kRadPerDeg) << '\n';
    } else {
      out << "delay weight=" << text::format_double(e.weight) << '\n';
    }
  }
  return out.str();
}

}  // namespace floqdnp
