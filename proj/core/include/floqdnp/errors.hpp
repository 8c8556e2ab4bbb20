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

#ifndef FLOQDNP_ERRORS_HPP_
#define FLOQDNP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace floqdnp {

// Malformed or missing user input (files, flags). The CLI maps this to exit 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input that violates a physical or numerical constraint. The CLI
// maps this to exit 3.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Error located in a text document. Line and column are 1-based; column 0
// means the whole line (or the whole document when line is 0 as well).
class ParseError : public InputError {
 public:
  ParseError(std::string message, int line, int column)
      : InputError(format(message, line, column)),
        message_(std::move(message)),
        line_(line),
        column_(column) {}

  const std::string& message() const noexcept { return message_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, int line, int column) {
    if (line <= 0) return message;
    std::string out = "line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    return out + ": " + message;
  }

  std::string message_;
  int line_;
  int column_;
};

}  // namespace floqdnp

#endif  // FLOQDNP_ERRORS_HPP_
