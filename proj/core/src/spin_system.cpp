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

#include "floqdnp/spin_system.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "floqdnp/errors.hpp"
#include "floqdnp/sequence.hpp"
#include "floqdnp/sequence_io.hpp"
#include "floqdnp/spin_ops.hpp"
#include "floqdnp/text_format.hpp"

namespace floqdnp {

std::pair<double, double> point_dipole(double d, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {d * (3.0 * c * c - 1.0), 3.0 * d * s * c};
}

bool SpinSystem::has_powder() const {
  for (const auto& n : nuclei) {
    if (n.kind == HyperfineKind::powder) return true;
  }
  return false;
}

std::pair<double, double> SpinSystem::hyperfine(int i) const {
  const Nucleus& n = nuclei.at(static_cast<std::size_t>(i));
  switch (n.kind) {
    case HyperfineKind::components: return {n.a_z, n.a_x};
    case HyperfineKind::dipolar: return point_dipole(n.d, n.theta);
    case HyperfineKind::powder: break;
  }
  throw DomainError("nucleus " + std::to_string(i + 1) + " is powder averaged; pick an orientation");
}

SpinSystem SpinSystem::at_orientation(double theta) const {
  SpinSystem out = *this;
  for (auto& n : out.nuclei) {
    if (n.kind == HyperfineKind::powder) n = Nucleus::dipolar(n.d, theta);
  }
  return out;
}

double SpinSystem::coupling(int i, int j) const {
  double d = 0.0;
  for (const auto& c : couplings) {
    if ((c.i == i && c.j == j) || (c.i == j && c.j == i)) d += c.d;
  }
  return d;
}

std::vector<int> SpinSystem::bath() const {
  std::vector<int> out;
  for (int i = 0; i < n_nuclei(); ++i) {
    const Nucleus& n = nuclei[static_cast<std::size_t>(i)];
    const bool silent = n.kind == HyperfineKind::components ? (n.a_z == 0.0 && n.a_x == 0.0)
                                                            : n.d == 0.0;
    if (silent) out.push_back(i);
  }
  if (out.empty()) {
    for (int i = 0; i < n_nuclei(); ++i) out.push_back(i);
  }
  return out;
}

void validate(const SpinSystem& sys) {
  if (sys.nuclei.empty()) throw DomainError("spin system needs at least one nucleus");
  if (sys.n_nuclei() > kMaxNuclei) {
    throw DomainError("Hilbert dimension 2^" + std::to_string(sys.n_spins()) +
                      " exceeds 64 (at most 5 nuclei)");
  }
  if (!std::isfinite(sys.omega_0n) || !std::isfinite(sys.offset)) {
    throw DomainError("spin system frequencies must be finite");
  }
  for (const auto& n : sys.nuclei) {
    if (!std::isfinite(n.a_z) || !std::isfinite(n.a_x) || !std::isfinite(n.d) ||
        !std::isfinite(n.theta)) {
      throw DomainError("hyperfine parameters must be finite");
    }
  }
  for (std::size_t a = 0; a < sys.couplings.size(); ++a) {
    const auto& c = sys.couplings[a];
    if (c.i < 0 || c.j < 0 || c.i >= sys.n_nuclei() || c.j >= sys.n_nuclei()) {
      throw DomainError("coupling refers to a missing nucleus");
    }
    if (c.i == c.j) throw DomainError("coupling of a nucleus to itself");
    if (!std::isfinite(c.d)) throw DomainError("coupling strength must be finite");
    for (std::size_t b = 0; b < a; ++b) {
      const auto& o = sys.couplings[b];
      if ((o.i == c.i && o.j == c.j) || (o.i == c.j && o.j == c.i)) {
        throw DomainError("duplicate coupling between nuclei " + std::to_string(c.i + 1) +
                          " and " + std::to_string(c.j + 1));
      }
    }
  }
}

SpinSystem parse_spin_system(std::string_view document) {
  SpinSystem sys;
  std::optional<int> omega_line, offset_line;

  for (const text::Line& line : text::tokenize(document)) {
    if (auto a = text::as_assignment(line)) {
      double* target = nullptr;
      std::optional<int>* seen = nullptr;
      if (a->key == "omega_0n_hz") {
        target = &sys.omega_0n;
        seen = &omega_line;
      } else if (a->key == "offset_hz") {
        target = &sys.offset;
        seen = &offset_line;
      } else {
        throw ParseError("unknown header key '" + std::string(a->key) + "'", line.number,
                         a->key_column);
      }
      if (seen->has_value()) {
        throw ParseError("duplicate header key '" + std::string(a->key) + "'", line.number,
                         a->key_column);
      }
      *seen = line.number;
      *target = text::parse_number(a->value, line.number, a->value_column) * kTwoPi;
      continue;
    }

    const text::Token& kind = line.tokens.front();
    const auto fields = text::record_fields(line);
    auto get = [&](std::string_view key) -> const text::Field* {
      const text::Field* hit = nullptr;
      for (const auto& f : fields) {
        if (f.key != key) continue;
        if (hit != nullptr) {
          throw ParseError("duplicate field '" + std::string(key) + "'", line.number, f.key_column);
        }
        hit = &f;
      }
      return hit;
    };
    auto require = [&](std::string_view key) -> const text::Field& {
      const text::Field* f = get(key);
      if (f == nullptr) {
        throw ParseError(std::string(kind.text) + " needs " + std::string(key), line.number,
                         kind.column);
      }
      return *f;
    };
    auto number = [&](const text::Field& f) {
      return text::parse_number(f.value, line.number, f.value_column);
    };
    auto only = [&](std::initializer_list<std::string_view> allowed) {
      for (const auto& f : fields) {
        bool ok = false;
        for (auto k : allowed) ok = ok || f.key == k;
        if (!ok) {
          throw ParseError("unknown field '" + std::string(f.key) + "'", line.number, f.key_column);
        }
      }
    };

    if (kind.text == "nucleus") {
      if (get("d_hz") != nullptr) {
        only({"d_hz", "theta_deg"});
        const double d = number(require("d_hz")) * kTwoPi;
        const text::Field& th = require("theta_deg");
        if (th.value == "powder") {
          sys.nuclei.push_back(Nucleus::powder(d));
        } else {
          sys.nuclei.push_back(Nucleus::dipolar(d, deg_to_rad(number(th))));
        }
      } else {
        only({"a_z_hz", "a_x_hz"});
        const double az = number(require("a_z_hz")) * kTwoPi;
        const double ax = number(require("a_x_hz")) * kTwoPi;
        sys.nuclei.push_back(Nucleus::components(az, ax));
      }
    } else if (kind.text == "coupling") {
      only({"i", "j", "d_hz"});
      const text::Field& fi = require("i");
      const text::Field& fj = require("j");
      const long long i = text::parse_integer(fi.value, line.number, fi.value_column);
      const long long j = text::parse_integer(fj.value, line.number, fj.value_column);
      if (i < 1 || i > 64) throw ParseError("nucleus index out of range", line.number, fi.value_column);
      if (j < 1 || j > 64) throw ParseError("nucleus index out of range", line.number, fj.value_column);
      sys.couplings.push_back(
          {static_cast<int>(i - 1), static_cast<int>(j - 1), number(require("d_hz")) * kTwoPi});
    } else {
      throw ParseError("unknown record '" + std::string(kind.text) + "'", line.number, kind.column);
    }
  }

  if (!omega_line) throw ParseError("missing header key 'omega_0n_hz'", 0, 0);
  if (sys.nuclei.empty()) throw ParseError("spin system has no nucleus records", 0, 0);
  validate(sys);
  return sys;
}

SpinSystem load_spin_system(const std::filesystem::path& path) {
  return parse_spin_system(read_text_file(path));
}

}  // namespace floqdnp
