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

#include "si_bench/trace_io.h"

#include <string>
#include <utility>
#include <vector>

#include "si_bench/catalog.h"
#include "si_bench/errors.h"

namespace si_bench {

using nlohmann::json;

namespace {

json StrategiesToJson(const std::vector<MixedStrategy>& strategies) {
  json out = json::array();
  for (const MixedStrategy& s : strategies) out.push_back(s.probs());
  return out;
}

std::vector<MixedStrategy> StrategiesFromJson(const json& doc, const char* key) {
  std::vector<MixedStrategy> out;
  if (!doc.contains(key)) return out;
  try {
    for (const json& row : doc.at(key)) {
      out.emplace_back(row.get<std::vector<double>>());
    }
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("trace.") + key + ": " + e.what());
  }
  return out;
}

}  // namespace

json TraceToJson(const MatchTrace& trace, const MatrixGame& game) {
  json history = json::array();
  for (const JointAction& joint : trace.history) {
    history.push_back({joint.a1, joint.a2});
  }
  json doc{{"type_id", trace.type_id},
           {"seed", trace.seed},
           {"game", GameToJson(trace.type_id, game)},
           {"history", std::move(history)},
           {"strategies_1", StrategiesToJson(trace.strategies_1)},
           {"strategies_2", StrategiesToJson(trace.strategies_2)}};
  if (trace.switch_stage_1) doc["switch_stage_1"] = *trace.switch_stage_1;
  if (trace.switch_stage_2) doc["switch_stage_2"] = *trace.switch_stage_2;
  return doc;
}

TraceDocument TraceFromJson(const json& doc) {
  if (!doc.is_object() || !doc.contains("game") || !doc.contains("history")) {
    throw InvalidInputError("trace document needs 'game' and 'history'");
  }
  MatchTrace trace;
  try {
    if (doc.contains("type_id")) trace.type_id = doc.at("type_id").get<std::string>();
    if (doc.contains("seed")) trace.seed = doc.at("seed").get<uint64_t>();
    for (const json& pair : doc.at("history")) {
      const auto joint = pair.get<std::vector<int>>();
      if (joint.size() != 2) {
        throw InvalidInputError("trace.history entries must be [a1, a2]");
      }
      trace.history.push_back({joint[0], joint[1]});
    }
    if (doc.contains("switch_stage_1")) {
      trace.switch_stage_1 = doc.at("switch_stage_1").get<int>();
    }
    if (doc.contains("switch_stage_2")) {
      trace.switch_stage_2 = doc.at("switch_stage_2").get<int>();
    }
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("malformed trace: ") + e.what());
  }
  trace.strategies_1 = StrategiesFromJson(doc, "strategies_1");
  trace.strategies_2 = StrategiesFromJson(doc, "strategies_2");
  TraceDocument out{GameFromJson(doc.at("game")), std::move(trace)};
  out.trace.Validate(out.game);
  return out;
}

void WriteTraceFile(const std::filesystem::path& path, const MatchTrace& trace,
                    const MatrixGame& game) {
  WriteTextFile(path, TraceToJson(trace, game).dump() + "\n");
}

TraceDocument ReadTraceFile(const std::filesystem::path& path) {
  return TraceFromJson(ReadJsonFile(path));
}

}  // namespace si_bench
