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

#include "floqdnp/text_format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

#include "floqdnp/errors.hpp"

namespace floqdnp::text {

namespace {

std::string to_chars_string(double value, std::optional<int> precision) {
  std::array<char, 64> buf{};
  const auto res = precision
                       ? std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                       std::chars_format::general, *precision)
                       : std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

std::optional<double> from_string(std::string_view s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) return std::nullopt;
  return v;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

}  // namespace

std::string format_double(double value) {
  if (value == 0.0) return "0";
  return to_chars_string(value, std::nullopt);
}

std::string format_scaled(double stored, double scale) {
  if (stored == 0.0) return "0";
  const double guess = stored / scale;
  for (int p = 1; p <= 17; ++p) {
    const std::string s = to_chars_string(guess, p);
    if (const auto v = from_string(s); v && *v * scale == stored) return format_double(*v);
  }
  // The nearest double may map one ulp off; search the neighbourhood.
  double lo = guess;
  double hi = guess;
  for (int step = 0; step < 8; ++step) {
    lo = std::nextafter(lo, -INFINITY);
    hi = std::nextafter(hi, INFINITY);
    for (double c : {lo, hi}) {
      if (c * scale == stored) return format_double(c);
    }
  }
  return format_double(guess);
}

std::vector<Line> tokenize(std::string_view document) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= document.size()) {
    const std::size_t eol = document.find('\n', pos);
    std::string_view raw = document.substr(pos, eol == std::string_view::npos ? document.npos : eol - pos);
    ++number;
    if (const std::size_t hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && is_space(raw[i])) ++i;
      if (i >= raw.size()) break;
      const std::size_t start = i;
      while (i < raw.size() && !is_space(raw[i])) ++i;
      line.tokens.push_back({raw.substr(start, i - start), static_cast<int>(start) + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return lines;
}

std::optional<Assignment> as_assignment(const Line& line) {
  const auto& toks = line.tokens;
  if (toks.empty()) return std::nullopt;
  Assignment out;
  std::size_t rest = 0;
  std::string first_value;
  const std::string_view head = toks[0].text;
  if (const std::size_t eq = head.find('='); eq != std::string_view::npos) {
    out.key = head.substr(0, eq);
    out.key_column = toks[0].column;
    first_value = std::string(head.substr(eq + 1));
    out.value_column = toks[0].column + static_cast<int>(eq) + 1;
    rest = 1;
  } else if (toks.size() >= 2 && toks[1].text.front() == '=') {
    out.key = head;
    out.key_column = toks[0].column;
    first_value = std::string(toks[1].text.substr(1));
    out.value_column = toks[1].column + 1;
    rest = 2;
  } else {
    return std::nullopt;
  }
  std::string value = first_value;
  for (std::size_t i = rest; i < toks.size(); ++i) {
    if (value.empty()) {
      out.value_column = toks[i].column;
    } else {
      value += ' ';
    }
    value += toks[i].text;
  }
  out.value = std::move(value);
  return out;
}

std::vector<Field> record_fields(const Line& line) {
  std::vector<Field> fields;
  for (std::size_t i = 1; i < line.tokens.size(); ++i) {
    const Token& tok = line.tokens[i];
    const std::size_t eq = tok.text.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == tok.text.size()) {
      throw ParseError("expected key=value, got '" + std::string(tok.text) + "'", line.number,
                       tok.column);
    }
    fields.push_back({tok.text.substr(0, eq), tok.text.substr(eq + 1), tok.column,
                      tok.column + static_cast<int>(eq) + 1});
  }
  return fields;
}

double parse_number(std::string_view text, int line, int column) {
  std::string_view s = text;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto v = from_string(s);
  if (!v || !std::isfinite(*v)) {
    throw ParseError("invalid number '" + std::string(text) + "'", line, column);
  }
  return *v;
}

long long parse_integer(std::string_view text, int line, int column) {
  long long v = 0;
  std::string_view s = text;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (s.empty() || res.ec != std::errc() || res.ptr != end) {
    throw ParseError("invalid integer '" + std::string(text) + "'", line, column);
  }
  return v;
}

}  // namespace floqdnp::text
