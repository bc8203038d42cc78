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

#ifndef SI_BENCH_HARNESS_H_
#define SI_BENCH_HARNESS_H_

// Match execution, per-trace verdicts and Monte-Carlo certification.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "si_bench/agents.h"
#include "si_bench/catalog.h"
#include "si_bench/equilibria.h"
#include "si_bench/game.h"
#include "si_bench/stats.h"

namespace si_bench {

struct MatchConfig {
  TypeId type_id;
  AgentSpec agent_1;
  AgentSpec agent_2;
  int horizon = 1;
  uint64_t seed = 0;
};

// Plays one match. Both seats sample from a single generator seeded with
// config.seed, player 1 first. Agent failures during play are rethrown as
// AgentError carrying the stage; construction failures as InvalidInputError.
MatchTrace RunMatch(const MatchConfig& config, const GameCatalog& catalog);

struct CompatibilityVerdict {
  PayoffProfile observed;
  // shortfalls[k][i]: p_i(s_k) - p_i(h_T) for PONE profile k and seat i.
  std::vector<std::array<double, 2>> shortfalls;
  // First PONE profile with some seat's shortfall <= epsilon.
  std::optional<int> witness;
  // Some PONE profile and some seat with shortfall <= epsilon.
  bool satisfied = false;
  // Every PONE profile has some seat with shortfall <= epsilon.
  bool strict_satisfied = false;
  // min over profiles of the smaller seat shortfall.
  double literal_margin = 0.0;
  // max over profiles of the smaller seat shortfall.
  double strict_margin = 0.0;
};

// InvalidInputError for an empty PONE set or an empty trace.
CompatibilityVerdict CheckCompatibility(const MatchTrace& trace,
                                        const MatrixGame& game,
                                        const EquilibriumSet& pone,
                                        double epsilon);

enum class ConsistencyFlavor { kStochastic, kAdversarial };
ConsistencyFlavor ParseConsistencyFlavor(std::string_view name);
std::string_view ConsistencyFlavorName(ConsistencyFlavor flavor);

// What the stochastic flavor compares against epsilon. kAtSwitch replaces the
// realized increments after a seat's switch stage by their expectations under
// the seat's recorded strategies; without a switch both are the realized
// regret.
enum class StochasticAccounting { kAtSwitch, kRealized };
StochasticAccounting ParseStochasticAccounting(std::string_view name);
std::string_view StochasticAccountingName(StochasticAccounting accounting);

struct ConsistencyVerdict {
  Seat seat = Seat::kPlayer1;
  ConsistencyFlavor flavor = ConsistencyFlavor::kStochastic;
  // Regrets divided by T.
  double external = 0.0;
  double stochastic = 0.0;
  std::optional<double> expected_external;
  std::optional<double> expected_stochastic;
  // Realized stochastic regret up to the seat's switch stage plus expected
  // increments afterwards, over T. Equals `stochastic` when there is no switch.
  std::optional<double> at_switch_stochastic;
  // The compared value: external (adversarial flavor), or stochastic under
  // the configured accounting (stochastic flavor).
  double regret = 0.0;
  bool satisfied = false;
};

// Expected diagnostics are filled in when the trace records strategies.
ConsistencyVerdict CheckConsistency(
    const MatchTrace& trace, const MatrixGame& game, Seat seat, double epsilon,
    ConsistencyFlavor flavor,
    StochasticAccounting accounting = StochasticAccounting::kAtSwitch);

// Realized stochastic regret through stage switch_stage - 1 plus the expected
// stochastic regret increments from the switch stage on (unnormalized).
double AtSwitchStochasticRegret(const MatchTrace& trace, const MatrixGame& game,
                                Seat seat);

enum class EpsilonSource { kExplicit, kTheorem1, kTheorem2 };

struct ExperimentConfig {
  GameCatalog catalog;
  std::shared_ptr<const ConventionMap> conventions;
  double delta = 0.05;
  EpsilonSource epsilon_source = EpsilonSource::kExplicit;
  // Resolved verdict threshold.
  double epsilon = 0.0;
  int horizon = 1;
  int trials = 1;
  ConsistencyFlavor flavor = ConsistencyFlavor::kStochastic;
  StochasticAccounting accounting = StochasticAccounting::kAtSwitch;
  std::vector<AgentSpec> agent_class;
  std::vector<AgentSpec> partners;
  std::optional<uint64_t> seed;
  // Statistical slack: a rate passes iff its one-sided lower bound at
  // `confidence` exceeds 1 - delta - slack.
  double confidence = 0.99;
  double slack = 0.02;
  // Canonical form of the document the config was read from.
  nlohmann::json source;
};

// Experiment documents:
//   { "catalog": path | {catalog}, "conventions": path | {map} (optional),
//     "delta": 0.05, "epsilon": 0.06 | "from_theorem_1" | "from_theorem_2",
//     "horizon": 10000, "trials": 500, "flavor": "stochastic",
//     "class": [agent, ...], "partners": [agent, ...], "seed": 7,
//     "accounting": "at_switch" | "realized", "confidence": 0.99,
//     "slack": 0.02 }
// Without "conventions" the welfare-lex conventions of the catalog are used.
ExperimentConfig ExperimentConfigFromJson(const nlohmann::json& doc,
                                          const std::filesystem::path& base_dir);
ExperimentConfig LoadExperimentFile(const std::filesystem::path& path);

// epsilon for the directive: StochasticFallbackParameters().epsilon, or
// AdversarialFallbackParameters().epsilon at the largest action count in the
// catalog.
double ResolveEpsilon(EpsilonSource source, int horizon, double delta,
                      const GameCatalog& catalog);

// Fills in unset fallback thresholds: the stochastic fallback gets the
// StochasticFallbackParameters() epsilon and the adversarial fallback the
// AdversarialFallbackParameters() epsilon1 for the game's action count.
AgentSpec ResolveAgentSpec(const AgentSpec& spec, int horizon, double delta,
                           int num_actions);

struct RateVerdict {
  Rate rate;
  double lower_bound = 0.0;  // one-sided at the configured confidence
  double upper_bound = 1.0;
  bool pass = false;
};

struct ConsistencyEntry {
  std::string agent;
  std::string partner;
  TypeId type_id;
  Seat seat = Seat::kPlayer1;
  RateVerdict verdict;
  // Maxima over trials of the compared value, of the fully realized regret of
  // the flavor, and of the diagnostics.
  double max_regret = 0.0;
  double max_realized = 0.0;
  double max_expected_external = 0.0;
  double max_at_switch_stochastic = 0.0;
  // Trials in which the evaluated seat switched, if it can switch.
  Rate switches;
};

struct CompatibilityEntry {
  std::string agent_1;
  std::string agent_2;
  TypeId type_id;
  RateVerdict literal;
  RateVerdict strict;
};

struct PairingError {
  std::string agent_1;
  std::string agent_2;
  TypeId type_id;
  int trial = 0;
  std::string message;
};

// One row per trial per verdict.
struct TrialRow {
  std::string pairing;
  TypeId type_id;
  int trial = 0;
  uint64_t seed = 0;
  std::string verdict;
  int player = 0;
  double value = 0.0;
  double threshold = 0.0;
  bool satisfied = false;
};

struct SiReport {
  double delta = 0.0;
  double epsilon = 0.0;
  std::string epsilon_source;
  int horizon = 0;
  int trials = 0;
  ConsistencyFlavor flavor = ConsistencyFlavor::kStochastic;
  StochasticAccounting accounting = StochasticAccounting::kAtSwitch;
  uint64_t seed = 0;
  double confidence = 0.0;
  double slack = 0.0;
  std::string config_hash;
  std::vector<ConsistencyEntry> consistency;
  std::vector<CompatibilityEntry> compatibility;
  std::vector<PairingError> errors;
  std::vector<TrialRow> rows;
  bool pass = false;
};

struct CertifyOptions {
  int workers = 1;
};

// Every class member against every partner and every class member, both
// seats, every type; compatibility for every ordered pair of class members.
// InvalidInputError for an empty class, trials < 1, a missing seed, or a
// catalog with games outside [0, 1]. Per-trial seeds are
// DeriveSeed(seed, trial, Fnv1a64(pairing key)), so the report does not
// depend on the worker count.
SiReport CertifySi(const ExperimentConfig& config,
                   const CertifyOptions& options = {});

nlohmann::json SiReportToJson(const SiReport& report);
std::string TrialCsvHeader();
std::string TrialCsv(const SiReport& report);

// Whether a rate passes the ">= 1 - delta" requirement under the slack rule.
RateVerdict JudgeRate(const Rate& rate, double delta, double confidence,
                      double slack);

std::string HexDigest(uint64_t value);

}  // namespace si_bench

#endif  // SI_BENCH_HARNESS_H_
