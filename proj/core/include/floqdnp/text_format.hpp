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

#ifndef FLOQDNP_TEXT_FORMAT_HPP_
#define FLOQDNP_TEXT_FORMAT_HPP_

// Shared lexical helpers for the line-oriented text formats (sequence files,
// spin-system files) and for deterministic number output in CSV/text.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace floqdnp::text {

// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

// Shortest decimal d with `parse(d) * scale == stored`, so a quantity stored
// in scaled units (rad/s, radians) survives a write/read cycle bit-exactly.
std::string format_scaled(double stored, double scale);

struct Token {
  std::string_view text;
  int column = 0;  // 1-based
};

// One significant line of a document: comments stripped, split on whitespace.
struct Line {
  int number = 0;  // 1-based
  std::vector<Token> tokens;
};

// Splits a document into non-empty lines. '#' starts a comment.
std::vector<Line> tokenize(std::string_view document);

// `key=value` field of a record or a header assignment.
struct Field {
  std::string_view key;
  std::string_view value;
  int key_column = 0;
  int value_column = 0;
};

// Header assignment `key = value` or `key=value`; nullopt if the line is not
// an assignment. The value is the remainder of the line, re-joined with
// single spaces.
struct Assignment {
  std::string_view key;
  std::string value;
  int key_column = 0;
  int value_column = 0;
};
std::optional<Assignment> as_assignment(const Line& line);

// Parses `key=value` tokens after the record keyword. Throws ParseError.
std::vector<Field> record_fields(const Line& line);

// Strict full-token number parsers. Throw ParseError with the given location.
double parse_number(std::string_view text, int line, int column);
long long parse_integer(std::string_view text, int line, int column);

}  // namespace floqdnp::text

#endif  // FLOQDNP_TEXT_FORMAT_HPP_
