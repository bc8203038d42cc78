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

#ifndef SI_BENCH_ERRORS_H_
#define SI_BENCH_ERRORS_H_

#include <stdexcept>
#include <string>

namespace si_bench {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain input: bad dimensions, bad probabilities,
// unparseable documents, unknown identifiers.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// A game larger than the equilibrium solver is configured to handle.
class UnsupportedSizeError : public Error {
 public:
  using Error::Error;
};

// Internal numerical failure (e.g. a game for which no equilibrium could be
// certified).
class SolverError : public Error {
 public:
  using Error::Error;
};

// An agent failed while choosing its strategy for a given stage.
class AgentError : public Error {
 public:
  AgentError(int stage, const std::string& what)
      : Error("stage " + std::to_string(stage) + ": " + what), stage_(stage) {}
  int stage() const { return stage_; }

 private:
  int stage_;
};

}  // namespace si_bench

#endif  // SI_BENCH_ERRORS_H_
