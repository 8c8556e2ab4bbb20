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

#ifndef FLOQDNP_CLI_CLI_HPP_
#define FLOQDNP_CLI_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace floqdnp::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kDomainError = 3,
};

// Runs the command line `args` (without the program name). Reports go to the
// files named by --out; documents without a file (presets) go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "a:b:step" (inclusive, step > 0) or a comma-separated list. Throws
// InputError for malformed or empty grids.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace floqdnp::cli

#endif  // FLOQDNP_CLI_CLI_HPP_
