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

#include "si_bench/harness.h"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <thread>
#include <utility>

#include <spdlog/spdlog.h>

#include "si_bench/errors.h"
#include "si_bench/format.h"
#include "si_bench/regret.h"
#include "si_bench/rng.h"
#include "si_bench/version.h"

namespace si_bench {

using nlohmann::json;

namespace {

// Absolute slack on shortfall comparisons, covering the rounding of the
// empirical average payoff.
constexpr double kShortfallTolerance = 1e-12;

}  // namespace

MatchTrace RunMatch(const MatchConfig& config, const GameCatalog& catalog) {
  if (config.horizon < 1) throw InvalidInputError("horizon must be >= 1");
  const MatrixGame& game = catalog.at(config.type_id);
  auto agent_1 = MakeAgent(config.agent_1, game, config.type_id,
                           Seat::kPlayer1, config.horizon);
  auto agent_2 = MakeAgent(config.agent_2, game, config.type_id,
                           Seat::kPlayer2, config.horizon);
  if (agent_1->wants_partner_strategy() && agent_2->wants_partner_strategy()) {
    throw InvalidInputError("at most one seat may be a white-box agent");
  }

  MatchTrace trace;
  trace.type_id = config.type_id;
  trace.seed = config.seed;
  trace.history.reserve(config.horizon);
  trace.strategies_1.reserve(config.horizon);
  trace.strategies_2.reserve(config.horizon);
  Rng rng(config.seed);
  for (int t = 1; t <= config.horizon; ++t) {
    const HistoryView view(trace.history);
    try {
      if (agent_1->wants_partner_strategy()) {
        trace.strategies_2.push_back(agent_2->Act(view));
        agent_1->ObservePartnerStrategy(trace.strategies_2.back());
        trace.strategies_1.push_back(agent_1->Act(view));
      } else {
        trace.strategies_1.push_back(agent_1->Act(view));
        if (agent_2->wants_partner_strategy()) {
          agent_2->ObservePartnerStrategy(trace.strategies_1.back());
        }
        trace.strategies_2.push_back(agent_2->Act(view));
      }
    } catch (const AgentError&) {
      throw;
    } catch (const std::exception& e) {
      throw AgentError(t, e.what());
    }
    const JointAction joint{SampleAction(trace.strategies_1.back(), rng),
                            SampleAction(trace.strategies_2.back(), rng)};
    trace.history.push_back(joint);
  }
  trace.switch_stage_1 = agent_1->switch_stage();
  trace.switch_stage_2 = agent_2->switch_stage();
  return trace;
}

CompatibilityVerdict CheckCompatibility(const MatchTrace& trace,
                                        const MatrixGame& game,
                                        const EquilibriumSet& pone,
                                        double epsilon) {
  if (pone.empty()) throw InvalidInputError("compatibility needs a PONE set");
  CompatibilityVerdict verdict;
  verdict.observed = EmpiricalPayoff(trace.history, game);
  verdict.literal_margin = std::numeric_limits<double>::infinity();
  verdict.strict_margin = -std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < pone.profiles.size(); ++k) {
    const PayoffProfile& p = pone.profiles[k].payoffs;
    const std::array<double, 2> shortfall{p.p1 - verdict.observed.p1,
                                          p.p2 - verdict.observed.p2};
    verdict.shortfalls.push_back(shortfall);
    const double smaller = std::min(shortfall[0], shortfall[1]);
    verdict.literal_margin = std::min(verdict.literal_margin, smaller);
    verdict.strict_margin = std::max(verdict.strict_margin, smaller);
    if (!verdict.witness && smaller <= epsilon + kShortfallTolerance) {
      verdict.witness = static_cast<int>(k);
    }
  }
  verdict.satisfied = verdict.witness.has_value();
  verdict.strict_satisfied =
      verdict.strict_margin <= epsilon + kShortfallTolerance;
  return verdict;
}

ConsistencyFlavor ParseConsistencyFlavor(std::string_view name) {
  if (name == "stochastic") return ConsistencyFlavor::kStochastic;
  if (name == "adversarial") return ConsistencyFlavor::kAdversarial;
  throw InvalidInputError("flavor must be 'stochastic' or 'adversarial', got '" +
                          std::string(name) + "'");
}

std::string_view ConsistencyFlavorName(ConsistencyFlavor flavor) {
  return flavor == ConsistencyFlavor::kStochastic ? "stochastic"
                                                  : "adversarial";
}

StochasticAccounting ParseStochasticAccounting(std::string_view name) {
  if (name == "at_switch") return StochasticAccounting::kAtSwitch;
  if (name == "realized") return StochasticAccounting::kRealized;
  throw InvalidInputError(
      "accounting must be 'at_switch' or 'realized', got '" +
      std::string(name) + "'");
}

std::string_view StochasticAccountingName(StochasticAccounting accounting) {
  return accounting == StochasticAccounting::kAtSwitch ? "at_switch"
                                                       : "realized";
}

double AtSwitchStochasticRegret(const MatchTrace& trace, const MatrixGame& game,
                                Seat seat) {
  const auto& strategies = trace.strategies(seat);
  if (strategies.size() != trace.history.size()) {
    throw InvalidInputError("trace has no strategy record for player " +
                            std::to_string(SeatNumber(seat)));
  }
  const int len = trace.length();
  const int cut = trace.switch_stage(seat) ? *trace.switch_stage(seat) - 1 : len;
  CumulativePayoffTable table(game.num_actions());
  double realized_before = 0.0;
  double expected_before = 0.0;
  for (int t = 0; t < len; ++t) {
    if (t == cut) {
      realized_before = table.StochasticRegret();
      expected_before = table.ExpectedStochasticRegret();
    }
    table.Update(game, seat, trace.history[t], &strategies[t]);
  }
  if (cut >= len) return table.StochasticRegret();
  return realized_before + (table.ExpectedStochasticRegret() - expected_before);
}

ConsistencyVerdict CheckConsistency(const MatchTrace& trace,
                                    const MatrixGame& game, Seat seat,
                                    double epsilon, ConsistencyFlavor flavor,
                                    StochasticAccounting accounting) {
  if (trace.history.empty()) throw InvalidInputError("empty trace");
  const double t = static_cast<double>(trace.length());
  const auto& strategies = trace.strategies(seat);
  const bool has_strategies = strategies.size() == trace.history.size();
  CumulativePayoffTable table(game.num_actions());
  for (size_t k = 0; k < trace.history.size(); ++k) {
    table.Update(game, seat, trace.history[k],
                 has_strategies ? &strategies[k] : nullptr);
  }
  ConsistencyVerdict verdict;
  verdict.seat = seat;
  verdict.flavor = flavor;
  verdict.external = table.ExternalRegret() / t;
  verdict.stochastic = table.StochasticRegret() / t;
  if (has_strategies) {
    verdict.expected_external = table.ExpectedExternalRegret() / t;
    verdict.expected_stochastic = table.ExpectedStochasticRegret() / t;
    verdict.at_switch_stochastic = AtSwitchStochasticRegret(trace, game, seat) / t;
  }
  if (flavor == ConsistencyFlavor::kAdversarial) {
    verdict.regret = verdict.external;
  } else if (accounting == StochasticAccounting::kAtSwitch &&
             verdict.at_switch_stochastic) {
    verdict.regret = *verdict.at_switch_stochastic;
  } else {
    verdict.regret = verdict.stochastic;
  }
  verdict.satisfied = verdict.regret <= epsilon;
  return verdict;
}

double ResolveEpsilon(EpsilonSource source, int horizon, double delta,
                      const GameCatalog& catalog) {
  switch (source) {
    case EpsilonSource::kTheorem1:
      return StochasticFallbackParameters(horizon, delta).epsilon;
    case EpsilonSource::kTheorem2: {
      int max_actions = 2;
      for (const auto& [id, game] : catalog.entries()) {
        max_actions = std::max(max_actions, game.num_actions());
      }
      return AdversarialFallbackParameters(horizon, delta, max_actions).epsilon;
    }
    case EpsilonSource::kExplicit:
      break;
  }
  throw InvalidInputError("explicit epsilon has nothing to resolve");
}

AgentSpec ResolveAgentSpec(const AgentSpec& spec, int horizon, double delta,
                           int num_actions) {
  AgentSpec out = spec;
  const int t = spec.params.horizon.value_or(horizon);
  if (!out.params.epsilon) {
    if (spec.kind == AgentKind::kStochasticFallback) {
      out.params.epsilon = StochasticFallbackParameters(t, delta).epsilon;
    } else if (spec.kind == AgentKind::kAdversarialFallback) {
      out.params.epsilon =
          AdversarialFallbackParameters(t, delta, num_actions).epsilon1;
    }
  }
  if (spec.params.inner) {
    out.params.inner = std::make_shared<const AgentSpec>(
        ResolveAgentSpec(*spec.params.inner, horizon, delta, num_actions));
  }
  return out;
}

namespace {

const std::set<std::string> kExperimentKeys = {
    "catalog", "conventions", "delta",   "epsilon",    "horizon", "trials",
    "flavor",  "class",       "partners", "seed",      "confidence", "slack",
    "accounting"};

template <typename T>
T Get(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("experiment.") + key + ": " + e.what());
  }
}

std::vector<AgentSpec> AgentList(const json& doc, const char* key,
                                 const GameCatalog& catalog,
                                 const std::filesystem::path& base_dir,
                                 std::shared_ptr<const ConventionMap> conventions) {
  std::vector<AgentSpec> out;
  if (!doc.contains(key)) return out;
  if (!doc.at(key).is_array()) {
    throw InvalidInputError(std::string("experiment.") + key + " must be a list");
  }
  for (const json& entry : doc.at(key)) {
    out.push_back(AgentSpecFromJson(ResolveDocument(entry, base_dir), catalog,
                                    base_dir, conventions));
  }
  return out;
}

void MakeLabelsUnique(std::vector<AgentSpec*> specs) {
  std::map<std::string, int> seen;
  for (AgentSpec* spec : specs) {
    const std::string name = spec->DisplayName();
    const int count = ++seen[name];
    spec->label = count == 1 ? name : name + "#" + std::to_string(count);
  }
}

}  // namespace

ExperimentConfig ExperimentConfigFromJson(const json& doc,
                                          const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw InvalidInputError("experiment must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (!kExperimentKeys.count(key)) {
      throw InvalidInputError("unknown experiment key '" + key + "'");
    }
  }
  for (const char* key : {"catalog", "delta", "epsilon", "horizon", "trials",
                          "class"}) {
    if (!doc.contains(key)) {
      throw InvalidInputError(std::string("experiment needs '") + key + "'");
    }
  }
  ExperimentConfig config;
  config.catalog = LoadCatalog(ResolveDocument(doc.at("catalog"), base_dir));
  config.conventions =
      doc.contains("conventions")
          ? std::make_shared<const ConventionMap>(ConventionMapFromJson(
                ResolveDocument(doc.at("conventions"), base_dir), config.catalog))
          : std::make_shared<const ConventionMap>(
                SelectConventions(config.catalog));

  config.delta = Get<double>(doc, "delta");
  if (!(config.delta > 0.0 && config.delta < 1.0)) {
    throw InvalidInputError("delta must lie in (0, 1)");
  }
  config.horizon = Get<int>(doc, "horizon");
  if (config.horizon < 1) throw InvalidInputError("horizon must be >= 1");
  config.trials = Get<int>(doc, "trials");
  if (config.trials < 1) throw InvalidInputError("trials must be >= 1");

  const json& epsilon = doc.at("epsilon");
  if (epsilon.is_string()) {
    const std::string directive = epsilon.get<std::string>();
    if (directive == "from_theorem_1") {
      config.epsilon_source = EpsilonSource::kTheorem1;
    } else if (directive == "from_theorem_2") {
      config.epsilon_source = EpsilonSource::kTheorem2;
    } else {
      throw InvalidInputError("unknown epsilon directive '" + directive + "'");
    }
    config.epsilon = ResolveEpsilon(config.epsilon_source, config.horizon,
                                    config.delta, config.catalog);
  } else {
    config.epsilon = Get<double>(doc, "epsilon");
  }
  if (!(config.epsilon > 0.0) || !std::isfinite(config.epsilon)) {
    throw InvalidInputError("epsilon must be positive");
  }

  if (doc.contains("flavor")) {
    config.flavor = ParseConsistencyFlavor(Get<std::string>(doc, "flavor"));
  }
  if (doc.contains("accounting")) {
    config.accounting =
        ParseStochasticAccounting(Get<std::string>(doc, "accounting"));
  }
  if (doc.contains("seed")) config.seed = Get<uint64_t>(doc, "seed");
  if (doc.contains("confidence")) config.confidence = Get<double>(doc, "confidence");
  if (!(config.confidence > 0.0 && config.confidence < 1.0)) {
    throw InvalidInputError("confidence must lie in (0, 1)");
  }
  if (doc.contains("slack")) config.slack = Get<double>(doc, "slack");
  if (!(config.slack >= 0.0)) throw InvalidInputError("slack must be >= 0");

  config.agent_class =
      AgentList(doc, "class", config.catalog, base_dir, config.conventions);
  if (config.agent_class.empty()) throw InvalidInputError("class is empty");
  config.partners =
      AgentList(doc, "partners", config.catalog, base_dir, config.conventions);
  std::vector<AgentSpec*> all;
  for (AgentSpec& spec : config.agent_class) all.push_back(&spec);
  for (AgentSpec& spec : config.partners) all.push_back(&spec);
  MakeLabelsUnique(all);

  json source = doc;
  source.erase("seed");
  source["catalog"] = CatalogToJson(config.catalog);
  source["conventions"] = ConventionMapToJson(*config.conventions);
  json class_docs = json::array();
  for (const AgentSpec& spec : config.agent_class) {
    class_docs.push_back(AgentSpecToJson(spec));
  }
  json partner_docs = json::array();
  for (const AgentSpec& spec : config.partners) {
    partner_docs.push_back(AgentSpecToJson(spec));
  }
  source["class"] = std::move(class_docs);
  source["partners"] = std::move(partner_docs);
  config.source = std::move(source);
  return config;
}

ExperimentConfig LoadExperimentFile(const std::filesystem::path& path) {
  return ExperimentConfigFromJson(ReadJsonFile(path), path.parent_path());
}

RateVerdict JudgeRate(const Rate& rate, double delta, double confidence,
                      double slack) {
  RateVerdict verdict;
  verdict.rate = rate;
  verdict.lower_bound = ClopperPearsonLower(rate.successes, rate.trials, confidence);
  verdict.upper_bound = ClopperPearsonUpper(rate.successes, rate.trials, confidence);
  verdict.pass = rate.trials > 0 && verdict.lower_bound > 1.0 - delta - slack;
  return verdict;
}

std::string HexDigest(uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(value));
  return buffer;
}

namespace {

struct Pairing {
  int spec_1;  // index into the combined class + partners list
  int spec_2;
  int type_index;
  uint64_t id;
};

struct TrialOutcome {
  bool ran = false;
  uint64_t seed = 0;
  std::optional<std::string> error;
  std::array<std::optional<ConsistencyVerdict>, 2> consistency;
  std::array<bool, 2> can_switch{false, false};
  std::array<std::optional<int>, 2> switch_stage;
  std::optional<CompatibilityVerdict> compatibility;
};

bool CanSwitch(const AgentSpec& spec) {
  return UsesConvention(spec.kind) || spec.kind == AgentKind::kSecretCode;
}

std::string CsvField(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

SiReport CertifySi(const ExperimentConfig& config, const CertifyOptions& options) {
  if (config.agent_class.empty()) throw InvalidInputError("class is empty");
  if (config.trials < 1) throw InvalidInputError("trials must be >= 1");
  if (config.horizon < 1) throw InvalidInputError("horizon must be >= 1");
  if (!config.seed) throw InvalidInputError("certification needs a master seed");
  if (options.workers < 1) throw InvalidInputError("workers must be >= 1");
  for (const auto& [id, game] : config.catalog.entries()) {
    if (!game.normalized()) {
      throw InvalidInputError("game '" + id +
                              "' has payoffs outside [0, 1]; regret bounds "
                              "need normalized games");
    }
  }

  const int num_class = static_cast<int>(config.agent_class.size());
  std::vector<const AgentSpec*> specs;
  for (const AgentSpec& spec : config.agent_class) specs.push_back(&spec);
  for (const AgentSpec& spec : config.partners) specs.push_back(&spec);
  const auto& types = config.catalog.entries();

  // resolved[type][spec]
  std::vector<std::vector<AgentSpec>> resolved(types.size());
  std::vector<EquilibriumSet> pone(types.size());
  for (size_t k = 0; k < types.size(); ++k) {
    const MatrixGame& game = types[k].second;
    for (const AgentSpec* spec : specs) {
      resolved[k].push_back(ResolveAgentSpec(*spec, config.horizon, config.delta,
                                             game.num_actions()));
    }
    pone[k] = ParetoOptimalSubset(EnumerateNash(game));
  }

  std::vector<Pairing> pairings;
  auto add_pairing = [&](int s1, int s2, int k) {
    const std::string key = AgentSpecToJson(resolved[k][s1]).dump() + "|" +
                            AgentSpecToJson(resolved[k][s2]).dump() + "|" +
                            types[k].first;
    pairings.push_back({s1, s2, k, Fnv1a64(key)});
  };
  for (int k = 0; k < static_cast<int>(types.size()); ++k) {
    for (int c = 0; c < num_class; ++c) {
      for (int p = num_class; p < static_cast<int>(specs.size()); ++p) {
        add_pairing(c, p, k);
        add_pairing(p, c, k);
      }
    }
    for (int c = 0; c < num_class; ++c) {
      for (int d = 0; d < num_class; ++d) add_pairing(c, d, k);
    }
  }

  const int trials = config.trials;
  const size_t num_tasks = pairings.size() * static_cast<size_t>(trials);
  std::vector<TrialOutcome> outcomes(num_tasks);
  std::vector<std::atomic<int>> first_error(pairings.size());
  for (auto& e : first_error) e.store(INT_MAX);
  std::atomic<size_t> next_task{0};

  auto run_task = [&](size_t task) {
    const size_t pi = task / trials;
    const int trial = static_cast<int>(task % trials);
    if (trial > first_error[pi].load()) return;
    const Pairing& pairing = pairings[pi];
    const auto& [type_id, game] = types[pairing.type_index];
    TrialOutcome& out = outcomes[task];
    out.ran = true;
    out.seed = DeriveSeed(*config.seed, static_cast<uint64_t>(trial), pairing.id);
    try {
      MatchConfig match{type_id, resolved[pairing.type_index][pairing.spec_1],
                        resolved[pairing.type_index][pairing.spec_2],
                        config.horizon, out.seed};
      const MatchTrace trace = RunMatch(match, config.catalog);
      const int seat_specs[2] = {pairing.spec_1, pairing.spec_2};
      for (Seat seat : {Seat::kPlayer1, Seat::kPlayer2}) {
        const int i = SeatIndex(seat);
        if (seat_specs[i] >= num_class) continue;
        out.consistency[i] =
            CheckConsistency(trace, game, seat, config.epsilon, config.flavor,
                             config.accounting);
        out.can_switch[i] = CanSwitch(*specs[seat_specs[i]]);
        out.switch_stage[i] = trace.switch_stage(seat);
      }
      if (pairing.spec_1 < num_class && pairing.spec_2 < num_class) {
        out.compatibility = CheckCompatibility(trace, game, pone[pairing.type_index],
                                               config.epsilon);
      }
    } catch (const std::exception& e) {
      out.error = e.what();
      int current = first_error[pi].load();
      while (trial < current && !first_error[pi].compare_exchange_weak(current, trial)) {
      }
    }
  };

  const int workers = static_cast<int>(
      std::min<size_t>(static_cast<size_t>(options.workers), num_tasks));
  auto worker = [&] {
    for (size_t task = next_task++; task < num_tasks; task = next_task++) {
      run_task(task);
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& thread : pool) thread.join();
  }

  SiReport report;
  report.delta = config.delta;
  report.epsilon = config.epsilon;
  report.epsilon_source = config.epsilon_source == EpsilonSource::kTheorem1
                              ? "from_theorem_1"
                          : config.epsilon_source == EpsilonSource::kTheorem2
                              ? "from_theorem_2"
                              : "explicit";
  report.horizon = config.horizon;
  report.trials = trials;
  report.flavor = config.flavor;
  report.accounting = config.accounting;
  report.seed = *config.seed;
  report.confidence = config.confidence;
  report.slack = config.slack;
  report.config_hash = HexDigest(Fnv1a64(config.source.dump()));

  for (size_t pi = 0; pi < pairings.size(); ++pi) {
    const Pairing& pairing = pairings[pi];
    const TypeId& type_id = types[pairing.type_index].first;
    const std::string& name_1 = specs[pairing.spec_1]->label;
    const std::string& name_2 = specs[pairing.spec_2]->label;
    const int error_trial = first_error[pi].load();
    if (error_trial != INT_MAX) {
      const TrialOutcome& bad = outcomes[pi * trials + error_trial];
      report.errors.push_back({name_1, name_2, type_id, error_trial, *bad.error});
      if (auto logger = spdlog::get("si_bench")) {
        logger->error("{} vs {} on {}: {}", name_1, name_2, type_id, *bad.error);
      }
      continue;
    }
    const std::string label = name_1 + " vs " + name_2;
    const int seat_specs[2] = {pairing.spec_1, pairing.spec_2};
    for (Seat seat : {Seat::kPlayer1, Seat::kPlayer2}) {
      const int i = SeatIndex(seat);
      if (seat_specs[i] >= num_class) continue;
      ConsistencyEntry entry;
      entry.agent = specs[seat_specs[i]]->label;
      entry.partner = specs[seat_specs[1 - i]]->label;
      entry.type_id = type_id;
      entry.seat = seat;
      Rate rate{0, trials};
      entry.switches.trials = 0;
      for (int trial = 0; trial < trials; ++trial) {
        const TrialOutcome& out = outcomes[pi * trials + trial];
        const ConsistencyVerdict& v = *out.consistency[i];
        if (v.satisfied) ++rate.successes;
        const double realized = config.flavor == ConsistencyFlavor::kStochastic
                                    ? v.stochastic
                                    : v.external;
        entry.max_regret = trial == 0 ? v.regret : std::max(entry.max_regret, v.regret);
        entry.max_realized =
            trial == 0 ? realized : std::max(entry.max_realized, realized);
        entry.max_expected_external =
            trial == 0 ? *v.expected_external
                       : std::max(entry.max_expected_external, *v.expected_external);
        entry.max_at_switch_stochastic =
            trial == 0 ? *v.at_switch_stochastic
                       : std::max(entry.max_at_switch_stochastic,
                                  *v.at_switch_stochastic);
        report.rows.push_back({label, type_id, trial, out.seed, "consistency",
                               SeatNumber(seat), v.regret, config.epsilon,
                               v.satisfied});
        if (out.can_switch[i]) {
          ++entry.switches.trials;
          if (out.switch_stage[i]) ++entry.switches.successes;
          report.rows.push_back(
              {label, type_id, trial, out.seed, "switch", SeatNumber(seat),
               static_cast<double>(out.switch_stage[i].value_or(0)), 0.0,
               !out.switch_stage[i].has_value()});
        }
      }
      entry.verdict =
          JudgeRate(rate, config.delta, config.confidence, config.slack);
      report.consistency.push_back(std::move(entry));
    }
    if (pairing.spec_1 < num_class && pairing.spec_2 < num_class) {
      CompatibilityEntry entry;
      entry.agent_1 = name_1;
      entry.agent_2 = name_2;
      entry.type_id = type_id;
      Rate literal{0, trials};
      Rate strict{0, trials};
      for (int trial = 0; trial < trials; ++trial) {
        const TrialOutcome& out = outcomes[pi * trials + trial];
        const CompatibilityVerdict& v = *out.compatibility;
        if (v.satisfied) ++literal.successes;
        if (v.strict_satisfied) ++strict.successes;
        report.rows.push_back({label, type_id, trial, out.seed, "compatibility",
                               0, v.literal_margin, config.epsilon, v.satisfied});
        report.rows.push_back({label, type_id, trial, out.seed,
                               "compatibility_strict", 0, v.strict_margin,
                               config.epsilon, v.strict_satisfied});
      }
      entry.literal = JudgeRate(literal, config.delta, config.confidence, config.slack);
      entry.strict = JudgeRate(strict, config.delta, config.confidence, config.slack);
      report.compatibility.push_back(std::move(entry));
    }
  }

  report.pass = report.errors.empty();
  for (const ConsistencyEntry& entry : report.consistency) {
    report.pass = report.pass && entry.verdict.pass;
  }
  for (const CompatibilityEntry& entry : report.compatibility) {
    report.pass = report.pass && entry.literal.pass;
  }
  return report;
}

namespace {

json RateVerdictToJson(const RateVerdict& v, double confidence) {
  return json{{"successes", v.rate.successes},
              {"trials", v.rate.trials},
              {"rate", v.rate.value()},
              {"lower_bound", v.lower_bound},
              {"upper_bound", v.upper_bound},
              {"confidence", confidence},
              {"pass", v.pass}};
}

}  // namespace

json SiReportToJson(const SiReport& report) {
  json consistency = json::array();
  for (const ConsistencyEntry& e : report.consistency) {
    json entry{{"agent", e.agent},
               {"partner", e.partner},
               {"type_id", e.type_id},
               {"player", SeatNumber(e.seat)},
               {"satisfied", RateVerdictToJson(e.verdict, report.confidence)},
               {"max_regret", e.max_regret},
               {"max_realized", e.max_realized},
               {"max_expected_external", e.max_expected_external},
               {"max_at_switch_stochastic", e.max_at_switch_stochastic}};
    if (e.switches.trials > 0) {
      entry["switches"] = {
          {"count", e.switches.successes},
          {"trials", e.switches.trials},
          {"rate", e.switches.value()},
          {"upper_bound", ClopperPearsonUpper(e.switches.successes,
                                              e.switches.trials,
                                              report.confidence)}};
    }
    consistency.push_back(std::move(entry));
  }
  json compatibility = json::array();
  for (const CompatibilityEntry& e : report.compatibility) {
    compatibility.push_back(
        {{"agent_1", e.agent_1},
         {"agent_2", e.agent_2},
         {"type_id", e.type_id},
         {"literal", RateVerdictToJson(e.literal, report.confidence)},
         {"strict", RateVerdictToJson(e.strict, report.confidence)}});
  }
  json errors = json::array();
  for (const PairingError& e : report.errors) {
    errors.push_back({{"agent_1", e.agent_1},
                      {"agent_2", e.agent_2},
                      {"type_id", e.type_id},
                      {"trial", e.trial},
                      {"message", e.message}});
  }
  return json{{"version", kVersion},
              {"config_hash", report.config_hash},
              {"seed", report.seed},
              {"parameters",
               {{"delta", report.delta},
                {"epsilon", report.epsilon},
                {"epsilon_source", report.epsilon_source},
                {"horizon", report.horizon},
                {"trials", report.trials},
                {"flavor", ConsistencyFlavorName(report.flavor)},
                {"accounting", StochasticAccountingName(report.accounting)},
                {"confidence", report.confidence},
                {"slack", report.slack}}},
              {"consistency", std::move(consistency)},
              {"compatibility", std::move(compatibility)},
              {"errors", std::move(errors)},
              {"pass", report.pass}};
}

std::string TrialCsvHeader() {
  return "pairing,type_id,trial,seed,verdict,player,value,threshold,satisfied";
}

std::string TrialCsv(const SiReport& report) {
  std::string out = TrialCsvHeader() + "\n";
  for (const TrialRow& row : report.rows) {
    out += CsvField(row.pairing) + "," + CsvField(row.type_id) + "," +
           std::to_string(row.trial) + "," + std::to_string(row.seed) + "," +
           row.verdict + "," + std::to_string(row.player) + "," +
           FormatDouble(row.value) + "," + FormatDouble(row.threshold) + "," +
           (row.satisfied ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace si_bench
