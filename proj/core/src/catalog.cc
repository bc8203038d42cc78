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

#include "si_bench/catalog.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "si_bench/errors.h"

namespace si_bench {

using nlohmann::json;

void GameCatalog::Add(TypeId id, MatrixGame game) {
  if (contains(id)) throw InvalidInputError("duplicate type id: " + id);
  entries_.emplace_back(std::move(id), std::move(game));
}

const MatrixGame& GameCatalog::at(const TypeId& id) const {
  for (const auto& [key, game] : entries_) {
    if (key == id) return game;
  }
  throw InvalidInputError("unknown type id: " + id);
}

bool GameCatalog::contains(const TypeId& id) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const auto& e) { return e.first == id; });
}

namespace {

Matrix MatrixFromJson(const json& value, const std::string& what) {
  if (!value.is_array()) throw InvalidInputError(what + " must be an array");
  Matrix m;
  for (const json& row : value) {
    if (!row.is_array()) {
      throw InvalidInputError(what + " rows must be arrays");
    }
    std::vector<double> r;
    for (const json& v : row) {
      if (!v.is_number()) {
        throw InvalidInputError(what + " entries must be numbers");
      }
      r.push_back(v.get<double>());
    }
    m.push_back(std::move(r));
  }
  return m;
}

}  // namespace

MatrixGame GameFromJson(const json& entry) {
  if (!entry.is_object()) throw InvalidInputError("game entry must be an object");
  for (const char* key : {"payoff_1", "payoff_2"}) {
    if (!entry.contains(key)) {
      throw InvalidInputError(std::string("game entry missing ") + key);
    }
  }
  MatrixGame game(MatrixFromJson(entry.at("payoff_1"), "payoff_1"),
                  MatrixFromJson(entry.at("payoff_2"), "payoff_2"));
  if (entry.contains("n_actions")) {
    const json& n = entry.at("n_actions");
    if (!n.is_number_integer() || n.get<int>() != game.num_actions()) {
      throw InvalidInputError("n_actions disagrees with the payoff matrices");
    }
  }
  return game;
}

json GameToJson(const TypeId& id, const MatrixGame& game) {
  return json{{"id", id},
              {"n_actions", game.num_actions()},
              {"payoff_1", game.PayoffMatrix(Seat::kPlayer1)},
              {"payoff_2", game.PayoffMatrix(Seat::kPlayer2)}};
}

GameCatalog LoadCatalog(const json& doc) {
  if (!doc.is_object() || !doc.contains("games") || !doc.at("games").is_array()) {
    throw InvalidInputError("catalog document needs a top-level 'games' array");
  }
  GameCatalog catalog;
  for (const json& entry : doc.at("games")) {
    if (!entry.is_object() || !entry.contains("id") ||
        !entry.at("id").is_string()) {
      throw InvalidInputError("every game needs a string 'id'");
    }
    const std::string id = entry.at("id").get<std::string>();
    try {
      catalog.Add(id, GameFromJson(entry));
    } catch (const InvalidInputError& e) {
      if (catalog.contains(id)) throw;
      throw InvalidInputError("game '" + id + "': " + e.what());
    }
  }
  if (catalog.empty()) throw InvalidInputError("catalog has no games");
  return catalog;
}

GameCatalog LoadCatalogFile(const std::filesystem::path& path) {
  return LoadCatalog(ReadJsonFile(path));
}

json CatalogToJson(const GameCatalog& catalog) {
  json games = json::array();
  for (const auto& [id, game] : catalog.entries()) {
    games.push_back(GameToJson(id, game));
  }
  return json{{"games", std::move(games)}};
}

json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw InvalidInputError(path.string() + ": " + e.what());
  }
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInputError("cannot write " + path.string());
  out << text;
}

json ResolveDocument(const json& value, const std::filesystem::path& base_dir) {
  if (value.is_string()) {
    std::filesystem::path p = value.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    return ReadJsonFile(p);
  }
  return value;
}

}  // namespace si_bench
