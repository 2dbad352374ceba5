// Copyright 2026 The cohere Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

// Command-line front end. Subcommands: weight, qubit, sample, volume-ratio,
// mmcs check, mmcs construct.
//
// Exit codes: 0 success, 2 input error, 3 solver stall, 4 self-verification
// failure, 1 unexpected internal error.

#include <iosfwd>
#include <string>
#include <vector>

namespace cohere::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitStall = 3;
inline constexpr int kExitVerification = 4;

/// Runs the tool with `args` (argv without the program name), writing the
/// report to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cohere::cli
