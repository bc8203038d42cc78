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

#ifndef SI_BENCH_CATALOG_H_
#define SI_BENCH_CATALOG_H_

// The game catalog document:
//
//   { "games": [ { "id": "coordination",
//                  "n_actions": 2,
//                  "payoff_1": [[1, 0], [0, 1]],
//                  "payoff_2": [[1, 0], [0, 1]] }, ... ] }
//
// Row index = player-1 action, column index = player-2 action.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "si_bench/game.h"

namespace si_bench {

// The type space: an ordered, non-empty collection of uniquely named games.
class GameCatalog {
 public:
  GameCatalog() = default;

  // Throws InvalidInputError on a duplicate id.
  void Add(TypeId id, MatrixGame game);

  const MatrixGame& at(const TypeId& id) const;
  bool contains(const TypeId& id) const;
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const std::vector<std::pair<TypeId, MatrixGame>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<TypeId, MatrixGame>> entries_;
};

// Throws InvalidInputError on malformed documents, duplicate ids, invalid
// games, empty catalogs, or an n_actions field that disagrees with the
// matrices.
GameCatalog LoadCatalog(const nlohmann::json& doc);
GameCatalog LoadCatalogFile(const std::filesystem::path& path);
nlohmann::json CatalogToJson(const GameCatalog& catalog);

nlohmann::json GameToJson(const TypeId& id, const MatrixGame& game);
MatrixGame GameFromJson(const nlohmann::json& entry);

// Reads and parses a JSON document; InvalidInputError with the parser's
// diagnostic on failure.
nlohmann::json ReadJsonFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

// A field that is either an inline document or a path to one. Relative paths
// resolve against `base_dir`.
nlohmann::json ResolveDocument(const nlohmann::json& value,
                               const std::filesystem::path& base_dir);

}  // namespace si_bench

#endif  // SI_BENCH_CATALOG_H_
