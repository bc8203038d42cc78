// Copyright 2026 The SI-Bench Authors
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

#ifndef SI_BENCH_TOOLS_CLI_H_
#define SI_BENCH_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace si_bench::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCertificationFailed = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitInternalError = 3;

// Runs the command line `args` (args[0] is the program name). Results go to
// `out` unless --out is given; diagnostics go to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace si_bench::cli

#endif  // SI_BENCH_TOOLS_CLI_H_
