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

#include "cli.h"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "si_bench/agents.h"
#include "si_bench/catalog.h"
#include "si_bench/equilibria.h"
#include "si_bench/errors.h"
#include "si_bench/format.h"
#include "si_bench/harness.h"
#include "si_bench/logging.h"
#include "si_bench/regret.h"
#include "si_bench/trace_io.h"
#include "si_bench/version.h"

namespace si_bench::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::string input;
  std::string out;
  std::string format = "doc";
  std::optional<uint64_t> seed;
  int workers = 1;
  double tol = kSolveTolerance;
  std::string flavor;
  std::string type_id;
  std::string tie_break = "welfare-lex";
};

void Emit(const Options& opts, const std::string& text, std::ostream& out) {
  if (opts.out.empty()) {
    out << text;
  } else {
    WriteTextFile(opts.out, text);
  }
}

std::string Strategy(const MixedStrategy& s) {
  std::string text;
  for (int a = 0; a < s.size(); ++a) {
    if (a > 0) text += ' ';
    text += FormatDouble(s[a]);
  }
  return text;
}

// A single game document or a catalog.
GameCatalog ReadGames(const fs::path& path) {
  const json doc = ReadJsonFile(path);
  if (doc.is_object() && doc.contains("games")) return LoadCatalog(doc);
  GameCatalog catalog;
  const std::string id = doc.is_object() && doc.contains("id") && doc.at("id").is_string()
                             ? doc.at("id").get<std::string>()
                             : path.stem().string();
  catalog.Add(id, GameFromJson(doc));
  return catalog;
}

int CmdSolve(const Options& opts, std::ostream& out) {
  const GameCatalog catalog = ReadGames(opts.input);
  SolverOptions solver;
  solver.tol = opts.tol;
  json games = json::array();
  std::string csv = "type_id,set,index,s1,s2,payoff_1,payoff_2\n";
  for (const auto& [id, game] : catalog.entries()) {
    if (!opts.type_id.empty() && id != opts.type_id) continue;
    const EquilibriumSet nash = EnumerateNash(game, solver);
    const EquilibriumSet pone = ParetoOptimalSubset(nash);
    games.push_back({{"id", id},
                     {"nash", EquilibriumSetToJson(nash)},
                     {"pone", EquilibriumSetToJson(pone)}});
    for (const auto& [name, set] : {std::pair{"nash", &nash}, std::pair{"pone", &pone}}) {
      for (size_t k = 0; k < set->profiles.size(); ++k) {
        const EquilibriumProfile& p = set->profiles[k];
        csv += id + "," + name + "," + std::to_string(k) + "," + Strategy(p.s1) +
               "," + Strategy(p.s2) + "," + FormatDouble(p.payoffs.p1) + "," +
               FormatDouble(p.payoffs.p2) + "\n";
      }
    }
  }
  if (games.empty()) throw InvalidInputError("no game with id '" + opts.type_id + "'");
  Emit(opts, opts.format == "csv" ? csv : json{{"games", games}}.dump(2) + "\n", out);
  return kExitOk;
}

int CmdConvention(const Options& opts, std::ostream& out) {
  const GameCatalog catalog = LoadCatalogFile(opts.input);
  SolverOptions solver;
  solver.tol = opts.tol;
  const ConventionMap conventions =
      SelectConventions(catalog, ParseTieBreakPolicy(opts.tie_break), solver);
  Emit(opts, ConventionMapToJson(conventions).dump(2) + "\n", out);
  return kExitOk;
}

// Match documents:
//   { "catalog": path | {catalog}, "conventions": path | {map} (optional),
//     "type_id": "...", "horizon": 100, "agent_1": {agent}, "agent_2": {agent},
//     "seed": 7, "delta": 0.05 }
// "delta" fills in unset fallback thresholds from the fallback parameter functions.
int CmdSimulate(const Options& opts, std::ostream& out) {
  const fs::path path(opts.input);
  const fs::path base = path.parent_path();
  const json doc = ReadJsonFile(path);
  for (const char* key : {"catalog", "type_id", "horizon", "agent_1", "agent_2"}) {
    if (!doc.is_object() || !doc.contains(key)) {
      throw InvalidInputError(std::string("match document needs '") + key + "'");
    }
  }
  const GameCatalog catalog = LoadCatalog(ResolveDocument(doc.at("catalog"), base));
  const auto conventions = std::make_shared<const ConventionMap>(
      doc.contains("conventions")
          ? ConventionMapFromJson(ResolveDocument(doc.at("conventions"), base), catalog)
          : SelectConventions(catalog));
  MatchConfig config;
  try {
    config.type_id = doc.at("type_id").get<std::string>();
    config.horizon = doc.at("horizon").get<int>();
    if (doc.contains("seed")) config.seed = doc.at("seed").get<uint64_t>();
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("match document: ") + e.what());
  }
  if (opts.seed) config.seed = *opts.seed;
  const MatrixGame& game = catalog.at(config.type_id);
  config.agent_1 = AgentSpecFromJson(ResolveDocument(doc.at("agent_1"), base),
                                     catalog, base, conventions);
  config.agent_2 = AgentSpecFromJson(ResolveDocument(doc.at("agent_2"), base),
                                     catalog, base, conventions);
  if (doc.contains("delta")) {
    const double delta = doc.at("delta").get<double>();
    config.agent_1 = ResolveAgentSpec(config.agent_1, config.horizon, delta,
                                      game.num_actions());
    config.agent_2 = ResolveAgentSpec(config.agent_2, config.horizon, delta,
                                      game.num_actions());
  }
  const MatchTrace trace = RunMatch(config, catalog);
  Emit(opts, TraceToJson(trace, game).dump() + "\n", out);
  return kExitOk;
}

int CmdRegret(const Options& opts, std::ostream& out) {
  const TraceDocument doc = ReadTraceFile(opts.input);
  const std::string trace_id = fs::path(opts.input).stem().string();
  json reports = json::array();
  std::string csv = RegretCsvHeader() + "\n";
  for (Seat seat : {Seat::kPlayer1, Seat::kPlayer2}) {
    const RegretReport report = ComputeRegretReport(doc.trace, doc.game, seat);
    reports.push_back(RegretReportToJson(trace_id, report));
    csv += RegretCsvRow(trace_id, report) + "\n";
  }
  Emit(opts, opts.format == "csv" ? csv : json{{"reports", reports}}.dump(2) + "\n",
       out);
  return kExitOk;
}

int CmdCertify(const Options& opts, std::ostream& out, std::ostream& err) {
  if (!opts.seed) {
    throw InvalidInputError("certify needs --seed");
  }
  ExperimentConfig config = LoadExperimentFile(opts.input);
  config.seed = opts.seed;
  if (!opts.flavor.empty()) {
    config.flavor = ParseConsistencyFlavor(opts.flavor);
    config.source["flavor"] = opts.flavor;
  }
  const SiReport report = CertifySi(config, {opts.workers});

  json doc = SiReportToJson(report);
  std::string command = "si_bench certify " + opts.input + " --seed " +
                        std::to_string(*opts.seed) + " --flavor " +
                        std::string(ConsistencyFlavorName(report.flavor));
  doc["reproduction"] = {{"command", command},
                         {"seed", report.seed},
                         {"config_hash", report.config_hash},
                         {"version", kVersion}};
  const std::string report_text = doc.dump(2) + "\n";
  const std::string csv = TrialCsv(report);
  if (!opts.out.empty()) {
    const fs::path dir(opts.out);
    WriteTextFile(dir / "report.json", report_text);
    WriteTextFile(dir / "trials.csv", csv);
  } else {
    out << (opts.format == "csv" ? csv : report_text);
  }
  for (const PairingError& e : report.errors) {
    err << "error: " << e.agent_1 << " vs " << e.agent_2 << " on " << e.type_id
        << " (trial " << e.trial << "): " << e.message << "\n";
  }
  if (!report.errors.empty()) return kExitInternalError;
  err << "certification " << (report.pass ? "PASSED" : "FAILED") << "\n";
  return report.pass ? kExitOk : kExitCertificationFailed;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Benchmark for socially intelligent agents in repeated games",
               "si_bench"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options opts;

  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", opts.out, "Output path");
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "doc"}));
  };

  CLI::App* solve = app.add_subcommand("solve", "Nash equilibria and PONE of a game");
  solve->add_option("game", opts.input, "Game or catalog file")->required();
  solve->add_option("--type", opts.type_id, "Only this type of a catalog");
  solve->add_option("--tol", opts.tol, "Solver tolerance")->check(CLI::PositiveNumber);
  add_format(solve);
  add_out(solve);

  CLI::App* convention =
      app.add_subcommand("convention", "Select one PONE per type of a catalog");
  convention->add_option("catalog", opts.input, "Catalog file")->required();
  convention->add_option("--tie-break", opts.tie_break, "Tie-break policy");
  convention->add_option("--tol", opts.tol, "Solver tolerance")
      ->check(CLI::PositiveNumber);
  add_out(convention);

  CLI::App* simulate = app.add_subcommand("simulate", "Play one match");
  simulate->add_option("match", opts.input, "Match file")->required();
  simulate->add_option("--seed", opts.seed, "Match seed");
  add_out(simulate);

  CLI::App* regret = app.add_subcommand("regret", "Regret report of a trace");
  regret->add_option("trace", opts.input, "Trace file")->required();
  add_format(regret);
  add_out(regret);

  CLI::App* certify =
      app.add_subcommand("certify", "Monte-Carlo certification of a class");
  certify->add_option("experiment", opts.input, "Experiment file")->required();
  certify->add_option("--seed", opts.seed, "Master seed (required)");
  certify->add_option("--workers", opts.workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  certify->add_option("--flavor", opts.flavor, "Consistency flavor")
      ->check(CLI::IsMember({"stochastic", "adversarial"}));
  add_format(certify);
  certify->add_option("--out", opts.out, "Output directory");

  std::vector<const char*> argv;
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream help;
    const int code = app.exit(e, help, help);
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      out << help.str();
      return kExitOk;
    }
    err << help.str();
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    ConfigureLoggingFromEnv();
    if (solve->parsed()) return CmdSolve(opts, out);
    if (convention->parsed()) return CmdConvention(opts, out);
    if (simulate->parsed()) return CmdSimulate(opts, out);
    if (regret->parsed()) return CmdRegret(opts, out);
    return CmdCertify(opts, out, err);
  } catch (const InvalidInputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const UnsupportedSizeError& e) {
    err << "unsupported size: " << e.what() << "\n";
    return kExitInternalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternalError;
  }
}

}  // namespace si_bench::cli
