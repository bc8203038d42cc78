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

#ifndef SI_BENCH_TRACE_IO_H_
#define SI_BENCH_TRACE_IO_H_

// Trace documents: a MatchTrace together with the game it was played on.
//
//   { "type_id": "...", "seed": 7,
//     "game": { "payoff_1": [[...]], "payoff_2": [[...]] },
//     "history": [[a1, a2], ...],
//     "strategies_1": [[p, ...], ...], "strategies_2": [[p, ...], ...],
//     "switch_stage_1": 12 }
//
// Doubles are written as shortest round-trip decimals, so reading a written
// trace reproduces every field exactly.

#include <filesystem>

#include <nlohmann/json.hpp>

#include "si_bench/game.h"

namespace si_bench {

struct TraceDocument {
  MatrixGame game;
  MatchTrace trace;
};

nlohmann::json TraceToJson(const MatchTrace& trace, const MatrixGame& game);
// Validates the trace against the embedded game; InvalidInputError otherwise.
TraceDocument TraceFromJson(const nlohmann::json& doc);

void WriteTraceFile(const std::filesystem::path& path, const MatchTrace& trace,
                    const MatrixGame& game);
TraceDocument ReadTraceFile(const std::filesystem::path& path);

}  // namespace si_bench

#endif  // SI_BENCH_TRACE_IO_H_
