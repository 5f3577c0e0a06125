// Copyright 2026 The bluffsolve Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BLUFFSOLVE_TOOLS_CLI_HPP_
#define BLUFFSOLVE_TOOLS_CLI_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace bluffsolve::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct Environment {
  // Value of BLUFFSOLVE_SEED, if set. --seed wins.
  std::optional<std::string> seed;
};

// Runs one command. `args` excludes the program name. Reports go to `out`
// (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err, const Environment& env = {});

}  // namespace bluffsolve::cli

#endif  // BLUFFSOLVE_TOOLS_CLI_HPP_
