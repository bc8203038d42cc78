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

#ifndef SI_BENCH_LOGGING_H_
#define SI_BENCH_LOGGING_H_

#include <string_view>

namespace si_bench {

inline constexpr const char* kLogEnvVar = "SI_BENCH_LOG";

// Sets the library log level from SI_BENCH_LOG
// (trace|debug|info|warn|error|off). Unset means "warn".
void ConfigureLoggingFromEnv();

// Throws InvalidInputError for an unknown level name.
void SetLogLevel(std::string_view level);

}  // namespace si_bench

#endif  // SI_BENCH_LOGGING_H_
