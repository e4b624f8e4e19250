// Copyright 2026 The qfault Authors
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

#ifndef QFAULT_CLI_H
#define QFAULT_CLI_H

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qfault/faults.h"

namespace qfault {

/// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitUndetectable = 2;

/// Parses a class-level fault selector list such as
/// "smgf,mmgf:2,rgf:2-3,stuck:0,1,+,-,cross". Classes not named are
/// disabled. Throws std::invalid_argument on unknown selectors.
FaultEnumConfig parse_fault_selectors(std::string_view text);

/// Runs the tool. `args` excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qfault

#endif
