// Copyright 2026 The dioexp Authors
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

#ifndef DIOEXP_CLI_HPP_
#define DIOEXP_CLI_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dioexp/numeric.hpp"

namespace dioexp::cli {

// Exit codes: 0 ok, 1 check failure, 2 bad input, 3 resource guard.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitResourceGuard = 3;

int ExitCodeFor(ErrorCode code);

struct CliConfig {
  int digits = 60;  // decimal precision of algebraic targets
  int depth = 3;
  int window = 8;
  std::string out;
  std::string plot;
  std::optional<std::string> seed;  // "x,y,z;x,y,z": seed line then seed point

  // Throws Error(kBadInput) on a non-positive limit or an unwritable path.
  void Validate() const;
};

// Default precision: DIOEXP_DIGITS when set, otherwise 60.
int DefaultDigits();

// Runs one command; args excludes the program name.
int Main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dioexp::cli

#endif  // DIOEXP_CLI_HPP_
