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

#ifndef FLOQDNP_SEQUENCE_IO_HPP_
#define FLOQDNP_SEQUENCE_IO_HPP_

// Sequence file format, one document per sequence:
//
//   name = qpulsepol
//   variant = qpulsepol        # optional preset tag
//   omega_0n_hz = 15000000
//   k = 3
//   f = 1.9                    # or omega_1_hz = ..., exactly one
//   pulse angle_deg=90 phase_deg=90
//   delay weight=0.125
//   ...
//
// Delay weights are the shares of the free-precession time (T_c minus the
// total pulse time) and must sum to one. k = 0 declares a spin-lock
// sequence without delays, which requires omega_1_hz.

#include <filesystem>
#include <string>
#include <string_view>

#include "floqdnp/sequence.hpp"

namespace floqdnp {

// Throws ParseError for malformed documents and DomainError when the pulses
// cannot fit into the resonant cycle.
PulseSequence parse_sequence(std::string_view document);

// Reads and parses a file; a missing file is an InputError.
PulseSequence load_sequence(const std::filesystem::path& path);

// Emits the format above. Identical sequences give identical bytes, and
// parse_sequence(serialize_sequence(s)) == s for every parsed or preset s.
std::string serialize_sequence(const PulseSequence& seq);

// Reads a whole text file; throws InputError if it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace floqdnp

#endif  // FLOQDNP_SEQUENCE_IO_HPP_
