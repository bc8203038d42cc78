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

#include "si_bench/logging.h"

#include <cstdlib>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "si_bench/errors.h"

namespace si_bench {

void SetLogLevel(std::string_view level) {
  const auto parsed = spdlog::level::from_str(std::string(level));
  // from_str maps unknown names to "off"; only accept that for "off" itself.
  if (parsed == spdlog::level::off && level != "off") {
    throw InvalidInputError("unknown log level: " + std::string(level));
  }
  spdlog::set_level(parsed);
}

void ConfigureLoggingFromEnv() {
  // Diagnostics go to stderr so that stdout stays machine-readable.
  if (spdlog::get("si_bench") == nullptr) {
    spdlog::set_default_logger(spdlog::stderr_color_mt("si_bench"));
  }
  const char* level = std::getenv(kLogEnvVar);
  SetLogLevel(level != nullptr && *level != '\0' ? level : "warn");
}

}  // namespace si_bench
