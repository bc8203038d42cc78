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

// Acceptance suite. Prints one PASS or FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "si_bench/agents.h"
#include "si_bench/catalog.h"
#include "si_bench/equilibria.h"
#include "si_bench/harness.h"
#include "si_bench/regret.h"
#include "si_bench/rng.h"
#include "si_bench/stats.h"
#include "test_oracles.h"
#include "test_util.h"

namespace si_bench {
namespace {

using nlohmann::json;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

oracle::Hist ToOracle(const History& h) {
  oracle::Hist out;
  for (const JointAction& j : h) out.emplace_back(j.a1, j.a2);
  return out;
}

std::vector<oracle::Vec> Probs(const std::vector<MixedStrategy>& s) {
  std::vector<oracle::Vec> out;
  for (const MixedStrategy& x : s) out.push_back(x.probs());
  return out;
}

std::vector<AgentSpec> LoadZoo(const GameCatalog& catalog) {
  std::vector<AgentSpec> zoo;
  for (const json& doc : ReadJsonFile(testing::ConfigDir() / "zoo.json")) {
    zoo.push_back(AgentSpecFromJson(doc, catalog, testing::ConfigDir()));
  }
  return zoo;
}

double StochasticEpsilon(int t, double delta) {
  return 2.0 * std::sqrt(2.0 / t * std::log(4.0 / delta)) + 1.0 / t;
}

double AdversarialEpsilon1(int t, double delta, int n) {
  return std::sqrt(2.0 / t * std::log(2.0 / delta)) + std::sqrt(std::log(n) / (2.0 * t)) +
         1.0 / t;
}

bool IsSelfPlay(const ConsistencyEntry& e) { return e.agent == e.partner; }

// Stochastic regret never exceeds external regret.
Outcome Criterion1() {
  Outcome o;
  std::mt19937_64 rng(1);
  int violations = 0, mismatches = 0;
  for (int c = 0; c < 10000; ++c) {
    const int n = 2 + c % 3;
    const oracle::Mat g1 = oracle::RandomMatrix(rng, n), g2 = oracle::RandomMatrix(rng, n);
    const oracle::Hist h =
        oracle::RandomHistory(rng, n, 1 + static_cast<int>(rng() % 50));
    const MatrixGame game(g1, g2);
    const History history = testing::ToHistory(h);
    for (Seat seat : {Seat::kPlayer1, Seat::kPlayer2}) {
      const double ext = ExternalRegret(history, game, seat);
      const double sto = StochasticRegret(history, game, seat);
      if (sto > ext + 1e-9) ++violations;
      const int who = SeatIndex(seat);
      if (std::fabs(ext - oracle::External(g1, g2, h, who)) > 1e-9 ||
          std::fabs(sto - oracle::Stochastic(g1, g2, h, who)) > 1e-9) {
        ++mismatches;
      }
    }
  }
  o.Require(violations == 0, fmt::format("{} violations", violations));
  o.Require(mismatches == 0, fmt::format("{} oracle mismatches", mismatches));
  o.detail = o.pass ? "0 violations in 10000 cases, library agrees with oracle" : o.detail;
  return o;
}

// Fictitious play has zero expected stochastic regret.
Outcome Criterion2() {
  Outcome o;
  std::mt19937_64 rng(2);
  double worst = 0.0;
  for (int m = 0; m < 100; ++m) {
    const int n = 2 + m % 3;
    const GameCatalog catalog = testing::SingleGameCatalog(
        "g", MatrixGame(oracle::RandomMatrix(rng, n), oracle::RandomMatrix(rng, n)));
    const std::vector<AgentSpec> zoo = LoadZoo(catalog);
    const AgentSpec& partner = zoo[m % zoo.size()];
    const bool fp_first = (m / zoo.size()) % 2 == 0;
    const MatchTrace trace =
        RunMatch({"g", fp_first ? FictitiousPlayAgent() : partner,
                  fp_first ? partner : FictitiousPlayAgent(), 1000, rng()},
                 catalog);
    const Seat seat = fp_first ? Seat::kPlayer1 : Seat::kPlayer2;
    const double r = ExpectedStochasticRegret(trace, catalog.at("g"), seat);
    worst = std::max(worst, std::fabs(r));
  }
  o.Require(worst <= 1e-9, fmt::format("max |expected stochastic regret| {:.3g}", worst));
  if (o.pass) o.detail = fmt::format("100 matches, max |expected stochastic regret| {:.3g}", worst);
  return o;
}

// Multiplicative weights: total expected external regret <= sqrt((T/2) ln N).
Outcome Criterion3() {
  Outcome o;
  std::mt19937_64 rng(3);
  const int horizon = 1000, n = 3;
  const double bound = std::sqrt(0.5 * horizon * std::log(n)) + 1e-6;
  int violations = 0, matches = 0;
  double worst = -1e300;
  for (int g = 0; g < 100; ++g) {
    const oracle::Mat g1 = oracle::RandomMatrix(rng, n), g2 = oracle::RandomMatrix(rng, n);
    const GameCatalog catalog = testing::SingleGameCatalog("g", MatrixGame(g1, g2));
    std::vector<AgentSpec> partners = LoadZoo(catalog);
    partners.push_back(RegretAdversary(true));
    for (const AgentSpec& partner : partners) {
      const MatchTrace trace =
          RunMatch({"g", MultiplicativeWeightsAgent(), partner, horizon, rng()}, catalog);
      const double r = oracle::ExpectedExternal(g1, g2, ToOracle(trace.history),
                                                Probs(trace.strategies_1), 0);
      worst = std::max(worst, r);
      violations += r > bound;
      ++matches;
    }
  }
  o.Require(violations == 0, fmt::format("{} of {} matches exceed the bound", violations, matches));
  o.detail += fmt::format("{}{} matches, max expected external regret {:.3f} <= {:.3f}",
                          o.detail.empty() ? "" : "; ", matches, worst, bound);
  return o;
}

// Stochastic fallback certification on the shipped experiment.
Outcome Criterion4() {
  Outcome o;
  const ExperimentConfig config = LoadExperimentFile(testing::ConfigDir() / "theorem1.json");
  const SiReport report = CertifySi(config);
  const double delta = config.delta;
  const double epsilon = StochasticEpsilon(config.horizon, delta);
  o.Require(std::fabs(report.epsilon - epsilon) <= 1e-12,
            fmt::format("epsilon {} != {}", report.epsilon, epsilon));
  o.Require(report.errors.empty(), "pairing errors");
  double worst_switch = 0.0, worst_compat = 1.0, worst_regret = 0.0;
  for (const ConsistencyEntry& e : report.consistency) {
    worst_regret = std::max(worst_regret, e.max_at_switch_stochastic);
    if (IsSelfPlay(e)) {
      worst_switch = std::max(
          worst_switch, ClopperPearsonUpper(e.switches.successes, e.switches.trials, 0.99));
    }
  }
  for (const CompatibilityEntry& e : report.compatibility) {
    worst_compat = std::min(worst_compat, e.literal.lower_bound);
  }
  o.Require(worst_switch <= delta + 0.02,
            fmt::format("switch upper bound {:.4f}", worst_switch));
  o.Require(worst_compat >= 1 - delta - 0.02,
            fmt::format("compatibility lower bound {:.4f}", worst_compat));
  o.Require(worst_regret <= epsilon + 1e-12,
            fmt::format("stochastic regret {:.6f} > epsilon", worst_regret));
  o.Require(report.pass, "report verdict FAIL");
  o.detail += fmt::format(
      "{}self-play switch upper bound {:.4f}, compatibility lower bound {:.4f}, max "
      "R_sto/T {:.6f} <= eps {:.6f}",
      o.detail.empty() ? "" : "; ", worst_switch, worst_compat, worst_regret, epsilon);
  return o;
}

// Adversarial fallback certification on the shipped experiment.
Outcome Criterion5() {
  Outcome o;
  const ExperimentConfig config = LoadExperimentFile(testing::ConfigDir() / "theorem2.json");
  const SiReport report = CertifySi(config);
  const double delta = config.delta;
  const int t = config.horizon;
  const double epsilon1 = AdversarialEpsilon1(t, delta, 2);
  const double azuma = std::sqrt(0.5 * t * std::log(1.0 / delta));
  o.Require(std::fabs(report.epsilon - (epsilon1 + azuma / t)) <= 1e-12,
            fmt::format("epsilon {} != {}", report.epsilon, epsilon1 + azuma / t));
  o.Require(report.errors.empty(), "pairing errors");
  double worst_expected = 0.0, worst_switch = 0.0, worst_rate = 1.0;
  for (const ConsistencyEntry& e : report.consistency) {
    worst_expected = std::max(worst_expected, e.max_expected_external);
    worst_rate = std::min(worst_rate, e.verdict.lower_bound);
    if (IsSelfPlay(e)) {
      worst_switch = std::max(
          worst_switch, ClopperPearsonUpper(e.switches.successes, e.switches.trials, 0.99));
    }
    o.Require(e.verdict.pass, fmt::format("{} vs {} on {} rate {:.3f}", e.agent, e.partner,
                                          e.type_id, e.verdict.rate.value()));
  }
  o.Require(worst_expected <= epsilon1 + 1e-12,
            fmt::format("expected external {:.6f} > eps1", worst_expected));
  o.Require(worst_switch <= delta + 0.02,
            fmt::format("switch upper bound {:.4f}", worst_switch));
  o.detail += fmt::format(
      "{}max expected R_ext/T {:.6f} <= eps1 {:.6f}, self-play switch upper bound {:.4f}, "
      "min consistency lower bound {:.4f}",
      o.detail.empty() ? "" : "; ", worst_expected, epsilon1, worst_switch, worst_rate);
  return o;
}

// Regret tails when both seats play a fixed mixed Nash profile.
Outcome Criterion6() {
  Outcome o;
  const GameCatalog catalog = testing::SingleGameCatalog("mp", testing::MatchingPennies());
  const ConventionMap conventions = SelectConventions(catalog);
  const EquilibriumProfile& profile = conventions.at("mp");
  const MatrixGame& game = catalog.at("mp");
  const int horizon = 10000, trials = 500;
  const double delta = 0.05;
  const double expected_bound = std::sqrt(2.0 * horizon * std::log(2.0 / delta));
  const double realized_bound = 2.0 * std::sqrt(2.0 * horizon * std::log(4.0 / delta));
  o.Require(!profile.s1.IsPure(), "selected convention is pure");
  int expected_exceed = 0, realized_exceed = 0;
  double worst_expected = 0.0, worst_realized = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(DeriveSeed(6, trial, 0));
    MatchTrace trace;
    trace.type_id = "mp";
    for (int t = 0; t < horizon; ++t) {
      const Action a1 = SampleAction(profile.s1, rng);
      const Action a2 = SampleAction(profile.s2, rng);
      trace.history.push_back({a1, a2});
      trace.strategies_1.push_back(profile.s1);
      trace.strategies_2.push_back(profile.s2);
    }
    bool e = false, r = false;
    for (Seat seat : {Seat::kPlayer1, Seat::kPlayer2}) {
      const RegretReport report = ComputeRegretReport(trace, game, seat);
      worst_expected = std::max(worst_expected, report.max_prefix_expected_external);
      worst_realized = std::max(worst_realized, report.max_prefix_external);
      e = e || report.max_prefix_expected_external > expected_bound;
      r = r || report.max_prefix_external > realized_bound;
    }
    expected_exceed += e;
    realized_exceed += r;
  }
  const double fe = static_cast<double>(expected_exceed) / trials;
  const double fr = static_cast<double>(realized_exceed) / trials;
  o.Require(fe <= delta, fmt::format("expected-regret tail {:.3f}", fe));
  o.Require(fr <= delta, fmt::format("realized-regret tail {:.3f}", fr));
  o.detail += fmt::format(
      "{}tail fractions {:.3f} (max {:.1f} vs {:.1f}) and {:.3f} (max {:.1f} vs {:.1f})",
      o.detail.empty() ? "" : "; ", fe, worst_expected, expected_bound, fr,
      worst_realized, realized_bound);
  return o;
}

bool Contains(const EquilibriumSet& set, const oracle::Vec& s1, const oracle::Vec& s2,
              double tol) {
  for (const EquilibriumProfile& p : set.profiles) {
    if (oracle::MaxAbs(p.s1.probs(), s1) <= tol && oracle::MaxAbs(p.s2.probs(), s2) <= tol) {
      return true;
    }
  }
  return false;
}

// Equilibrium solver golden set and random cross-validation.
Outcome Criterion7() {
  Outcome o;
  const MatrixGame coop = testing::Cooperative();
  const EquilibriumSet nash = EnumerateNash(coop);
  o.Require(nash.size() == 3 && Contains(nash, {1, 0}, {1, 0}, 1e-9) &&
                Contains(nash, {0, 1}, {0, 1}, 1e-9) &&
                Contains(nash, {1.0 / 3, 2.0 / 3}, {1.0 / 3, 2.0 / 3}, 1e-9),
            "cooperative game equilibria");
  const EquilibriumSet pone = ParetoOptimalSubset(nash);
  o.Require(pone.size() == 1 && Contains(pone, {1, 0}, {1, 0}, 1e-9), "cooperative PONE");
  const EquilibriumSet pennies = EnumerateNash(testing::MatchingPennies());
  o.Require(pennies.size() == 1 && Contains(pennies, {0.5, 0.5}, {0.5, 0.5}, 1e-9),
            "matching pennies");

  std::mt19937_64 rng(7);
  int not_nash = 0, missed = 0, grids = 0, incomplete = 0, oracle_mismatch = 0;
  for (int g = 0; g < 1000; ++g) {
    const int n = 2 + g % 3;
    const oracle::Mat g1 = oracle::RandomMatrix(rng, n), g2 = oracle::RandomMatrix(rng, n);
    const MatrixGame game(g1, g2);
    const EquilibriumSet set = EnumerateNash(game);
    for (const EquilibriumProfile& p : set.profiles) {
      if (!IsNash(game, p.s1, p.s2, 1e-7) ||
          oracle::NashGap(g1, g2, p.s1.probs(), p.s2.probs()) > 1e-7) {
        ++not_nash;
      }
    }
    const auto exact = oracle::SupportEnumeration(g1, g2);
    bool same = exact.size() == set.size();
    for (const auto& [s1, s2] : exact) same = same && Contains(set, s1, s2, 1e-6);
    oracle_mismatch += !same;
    if (n > 3) continue;
    if (!set.complete_vertex_enumeration) {
      ++incomplete;
      continue;
    }
    ++grids;
    for (const auto& [s1, s2] : oracle::GridNash(g1, g2, 64, 1e-3)) {
      if (!Contains(set, s1, s2, 1.0 / 64)) ++missed;
    }
  }
  o.Require(not_nash == 0, fmt::format("{} profiles fail the Nash check", not_nash));
  o.Require(oracle_mismatch == 0,
            fmt::format("{} games differ from support enumeration", oracle_mismatch));
  o.Require(missed == 0, fmt::format("{} grid points at gain <= 1e-3 lie farther than 1/64 "
                                     "from every enumerated profile", missed));
  o.detail += fmt::format(
      "{}golden set exact, 1000 random games all Nash at 1e-7, {} disagree with support "
      "enumeration, grid cross-check on {} games ({} skipped as incomplete)",
      o.detail.empty() ? "" : "; ", oracle_mismatch, grids, incomplete);
  return o;
}

// Per-trial CSV does not depend on the worker count.
Outcome Criterion8() {
  Outcome o;
  ExperimentConfig config = LoadExperimentFile(testing::ConfigDir() / "theorem1.json");
  config.trials = 25;
  const std::string one = TrialCsv(CertifySi(config, {1}));
  const std::string four = TrialCsv(CertifySi(config, {4}));
  o.Require(one == four, "CSV differs between 1 and 4 workers");
  if (o.pass) o.detail = fmt::format("{} bytes identical for 1 and 4 workers", one.size());
  return o;
}

// Conflicting conventions must be detected as incompatible.
Outcome Criterion9() {
  Outcome o;
  const ExperimentConfig config =
      LoadExperimentFile(testing::ConfigDir() / "miscoordination.json");
  const SiReport report = CertifySi(config);
  o.Require(report.errors.empty(), "pairing errors");
  double worst = 1.0;
  int cross = 0;
  for (const CompatibilityEntry& e : report.compatibility) {
    if (e.agent_1 == e.agent_2) continue;
    ++cross;
    worst = std::min(worst, 1.0 - e.literal.rate.value());
  }
  o.Require(cross == 2, fmt::format("{} cross pairings", cross));
  o.Require(worst >= 0.95, fmt::format("failure rate {:.3f}", worst));
  o.detail += fmt::format("{}minimum cross-pairing compatibility failure rate {:.3f}",
                          o.detail.empty() ? "" : "; ", worst);
  return o;
}

struct Criterion {
  const char* name;
  double time_limit_s;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace si_bench

int main() {
  using si_bench::Criterion;
  const std::vector<Criterion> criteria = {
      {"AC1 stochastic within external regret", 30, si_bench::Criterion1},
      {"AC2 fictitious play expected stochastic regret", 60, si_bench::Criterion2},
      {"AC3 multiplicative weights regret bound", 120, si_bench::Criterion3},
      {"AC4 stochastic fallback certification", 600, si_bench::Criterion4},
      {"AC5 adversarial fallback certification", 600, si_bench::Criterion5},
      {"AC6 Nash-play regret tails", 300, si_bench::Criterion6},
      {"AC7 equilibrium solver", 120, si_bench::Criterion7},
      {"AC8 worker-count determinism", 600, si_bench::Criterion8},
      {"AC9 miscoordination control", 120, si_bench::Criterion9},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    si_bench::Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.time_limit_s) {
      outcome.pass = false;
      outcome.detail += fmt::format("; runtime over {:.0f} s", c.time_limit_s);
    }
    failures += !outcome.pass;
    std::printf("%s %s: %s (%.1f s)\n", outcome.pass ? "PASS" : "FAIL", c.name,
                outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
