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

#include "si_bench/equilibria.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>
#include <spdlog/spdlog.h>

#include "si_bench/errors.h"

namespace si_bench {

using nlohmann::json;

bool EquilibriumProfile::SameProfile(const EquilibriumProfile& other,
                                     double tol) const {
  return s1.MaxAbsDifference(other.s1) <= tol &&
         s2.MaxAbsDifference(other.s2) <= tol;
}

EquilibriumProfile MakeProfile(const MatrixGame& game, MixedStrategy s1,
                               MixedStrategy s2) {
  const PayoffProfile payoffs = ExpectedPayoff(game, s1, s2);
  std::vector<Action> support_1 = s1.Support();
  std::vector<Action> support_2 = s2.Support();
  return EquilibriumProfile{std::move(s1), std::move(s2), payoffs,
                            std::move(support_1), std::move(support_2)};
}

namespace {

std::vector<Action> MaskToActions(unsigned mask) {
  std::vector<Action> actions;
  for (int a = 0; mask != 0; ++a, mask >>= 1) {
    if (mask & 1u) actions.push_back(a);
  }
  return actions;
}

struct IndifferenceSolution {
  bool consistent = false;
  bool unique = false;
  std::vector<double> probs;  // full length N, zero off the mixing support
  double value = 0.0;
};

// Finds a distribution q over `mixing` (the partner's support) that makes
// `seat` indifferent among `indifferent` (its own support):
//   sum_p G_seat(own, p) q_p = v  for every own in `indifferent`,
//   sum_p q_p = 1.
// Uses the minimum-norm least-squares solution; `unique` reports full column
// rank.
IndifferenceSolution SolveIndifference(const MatrixGame& game, Seat seat,
                                       const std::vector<Action>& indifferent,
                                       const std::vector<Action>& mixing,
                                       double tol) {
  const int rows = static_cast<int>(indifferent.size()) + 1;
  const int cols = static_cast<int>(mixing.size()) + 1;
  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
  for (int r = 0; r < rows - 1; ++r) {
    for (int c = 0; c < cols - 1; ++c) {
      system(r, c) = game.SeatPayoff(seat, indifferent[r], mixing[c]);
    }
    system(r, cols - 1) = -1.0;
  }
  for (int c = 0; c < cols - 1; ++c) system(rows - 1, c) = 1.0;
  rhs(rows - 1) = 1.0;

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(system);
  cod.setThreshold(1e-11);
  const Eigen::VectorXd solution = cod.solve(rhs);

  IndifferenceSolution out;
  const double residual = (system * solution - rhs).lpNorm<Eigen::Infinity>();
  out.consistent = std::isfinite(residual) && residual <= tol;
  out.unique = cod.rank() == cols;
  out.probs.assign(game.num_actions(), 0.0);
  for (int c = 0; c < cols - 1; ++c) out.probs[mixing[c]] = solution(c);
  out.value = solution(cols - 1);
  return out;
}

// Nonnegative on the support and no action outside `indifferent` beats the
// indifference value against q.
bool PassesSupportChecks(const MatrixGame& game, Seat seat,
                         const std::vector<Action>& indifferent,
                         const IndifferenceSolution& sol, double tol) {
  for (double p : sol.probs) {
    if (p < -tol) return false;
  }
  const int n = game.num_actions();
  for (Action own = 0; own < n; ++own) {
    if (std::find(indifferent.begin(), indifferent.end(), own) !=
        indifferent.end()) {
      continue;
    }
    double payoff = 0.0;
    for (Action p = 0; p < n; ++p) {
      payoff += game.SeatPayoff(seat, own, p) * sol.probs[p];
    }
    if (payoff > sol.value + tol) return false;
  }
  return true;
}

MixedStrategy ClampToSimplex(std::vector<double> probs) {
  double sum = 0.0;
  for (double& p : probs) {
    if (p < 0.0) p = 0.0;
    sum += p;
  }
  for (double& p : probs) p /= sum;
  return MixedStrategy(std::move(probs));
}

}  // namespace

EquilibriumSet EnumerateNash(const MatrixGame& game,
                             const SolverOptions& options) {
  const int n = game.num_actions();
  if (n > options.max_actions) {
    throw UnsupportedSizeError("equilibrium enumeration supports N <= " +
                               std::to_string(options.max_actions) +
                               ", got N = " + std::to_string(n));
  }

  // Supports grouped by size.
  std::vector<std::vector<std::vector<Action>>> by_size(n + 1);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    by_size[std::popcount(mask)].push_back(MaskToActions(mask));
  }
  std::vector<std::pair<int, int>> size_pairs;
  for (int k = 1; k <= n; ++k) size_pairs.emplace_back(k, k);
  for (int k1 = 1; k1 <= n; ++k1) {
    for (int k2 = 1; k2 <= n; ++k2) {
      if (k1 != k2) size_pairs.emplace_back(k1, k2);
    }
  }

  EquilibriumSet result;
  for (const auto& [k1, k2] : size_pairs) {
    for (const auto& support_1 : by_size[k1]) {
      for (const auto& support_2 : by_size[k2]) {
        // Player 2's mix makes player 1 indifferent on support_1, and vice
        // versa.
        const IndifferenceSolution y = SolveIndifference(
            game, Seat::kPlayer1, support_1, support_2, options.tol);
        if (!y.consistent) continue;
        const IndifferenceSolution x = SolveIndifference(
            game, Seat::kPlayer2, support_2, support_1, options.tol);
        if (!x.consistent) continue;
        if (!x.unique || !y.unique) {
          spdlog::debug("support pair ({}, {}) has a non-unique solution",
                        k1, k2);
          result.complete_vertex_enumeration = false;
        }
        if (!PassesSupportChecks(game, Seat::kPlayer1, support_1, y,
                                 options.tol) ||
            !PassesSupportChecks(game, Seat::kPlayer2, support_2, x,
                                 options.tol)) {
          continue;
        }
        MixedStrategy s1 = ClampToSimplex(x.probs);
        MixedStrategy s2 = ClampToSimplex(y.probs);
        const NashCheck check = IsNash(game, s1, s2, options.verify_tol);
        if (!check) {
          spdlog::debug("candidate failed verification (gain {})",
                        check.max_gain());
          continue;
        }
        EquilibriumProfile profile =
            MakeProfile(game, std::move(s1), std::move(s2));
        const bool duplicate = std::any_of(
            result.profiles.begin(), result.profiles.end(),
            [&](const EquilibriumProfile& p) {
              return p.SameProfile(profile, options.tol);
            });
        if (!duplicate) result.profiles.push_back(std::move(profile));
      }
    }
  }
  if (result.profiles.empty()) {
    // Every finite game has an equilibrium; reaching this is numerical.
    throw SolverError("support enumeration found no equilibrium");
  }
  return result;
}

NashCheck IsNash(const MatrixGame& game, const MixedStrategy& s1,
                 const MixedStrategy& s2, double tol) {
  const int n = game.num_actions();
  if (s1.size() != n || s2.size() != n) {
    throw InvalidInputError("strategy dimension does not match the game");
  }
  NashCheck check;
  const MixedStrategy* own[2] = {&s1, &s2};
  const MixedStrategy* partner[2] = {&s2, &s1};
  double gains[2];
  for (int s = 0; s < 2; ++s) {
    const Seat seat = static_cast<Seat>(s);
    double best = -std::numeric_limits<double>::infinity();
    double value = 0.0;
    for (Action a = 0; a < n; ++a) {
      double payoff = 0.0;
      for (Action p = 0; p < n; ++p) {
        payoff += game.SeatPayoff(seat, a, p) * (*partner[s])[p];
      }
      best = std::max(best, payoff);
      value += (*own[s])[a] * payoff;
    }
    gains[s] = best - value;
  }
  check.max_gain_1 = gains[0];
  check.max_gain_2 = gains[1];
  check.is_nash = gains[0] <= tol && gains[1] <= tol;
  return check;
}

namespace {

bool StronglyDominates(const PayoffProfile& a, const PayoffProfile& b,
                       double tol) {
  return a.p1 > b.p1 + tol && a.p2 > b.p2 + tol;
}

}  // namespace

EquilibriumSet ParetoOptimalSubset(const EquilibriumSet& equilibria,
                                   double tol) {
  EquilibriumSet out;
  out.complete_vertex_enumeration = equilibria.complete_vertex_enumeration;
  for (const auto& candidate : equilibria.profiles) {
    const bool dominated = std::any_of(
        equilibria.profiles.begin(), equilibria.profiles.end(),
        [&](const EquilibriumProfile& other) {
          return StronglyDominates(other.payoffs, candidate.payoffs, tol);
        });
    if (!dominated) out.profiles.push_back(candidate);
  }
  return out;
}

bool IsParetoOptimalNash(const MatrixGame& game, const MixedStrategy& s1,
                         const MixedStrategy& s2,
                         const EquilibriumSet& equilibria) {
  if (!IsNash(game, s1, s2)) return false;
  const PayoffProfile payoffs = ExpectedPayoff(game, s1, s2);
  return std::none_of(equilibria.profiles.begin(), equilibria.profiles.end(),
                      [&](const EquilibriumProfile& other) {
                        return StronglyDominates(other.payoffs, payoffs,
                                                 kDominanceTolerance);
                      });
}

TieBreakPolicy ParseTieBreakPolicy(std::string_view name) {
  if (name == "welfare-lex") return TieBreakPolicy::kWelfareLex;
  throw InvalidInputError("unknown tie-break policy: " + std::string(name));
}

std::string_view TieBreakPolicyName(TieBreakPolicy policy) {
  switch (policy) {
    case TieBreakPolicy::kWelfareLex:
      return "welfare-lex";
  }
  return "unknown";
}

namespace {

// -1, 0, +1 comparing probability vectors lexicographically, with exact
// equality below tol.
int CompareLex(const MixedStrategy& a, const MixedStrategy& b, double tol) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] > b[i] + tol) return 1;
    if (a[i] < b[i] - tol) return -1;
  }
  return 0;
}

// True if `a` should be chosen over `b` under welfare-lex. The final key
// prefers the lexicographically larger (s1, s2), which favours low-index
// actions among pure profiles.
bool WelfareLexBetter(const EquilibriumProfile& a, const EquilibriumProfile& b) {
  constexpr double kTieTol = 1e-9;
  const double wa = a.payoffs.p1 + a.payoffs.p2;
  const double wb = b.payoffs.p1 + b.payoffs.p2;
  if (wa > wb + kTieTol) return true;
  if (wa < wb - kTieTol) return false;
  if (a.payoffs.p1 > b.payoffs.p1 + kTieTol) return true;
  if (a.payoffs.p1 < b.payoffs.p1 - kTieTol) return false;
  const int c1 = CompareLex(a.s1, b.s1, kTieTol);
  if (c1 != 0) return c1 > 0;
  return CompareLex(a.s2, b.s2, kTieTol) > 0;
}

}  // namespace

const EquilibriumProfile& SelectConvention(const EquilibriumSet& pone,
                                           TieBreakPolicy policy) {
  if (pone.empty()) throw InvalidInputError("empty PONE set");
  const EquilibriumProfile* best = &pone.profiles.front();
  for (const auto& p : pone.profiles) {
    switch (policy) {
      case TieBreakPolicy::kWelfareLex:
        if (WelfareLexBetter(p, *best)) best = &p;
        break;
    }
  }
  return *best;
}

void ConventionMap::Set(const TypeId& id, EquilibriumProfile profile) {
  profiles_.insert_or_assign(id, std::move(profile));
}

const EquilibriumProfile& ConventionMap::at(const TypeId& id) const {
  const auto it = profiles_.find(id);
  if (it == profiles_.end()) {
    throw InvalidInputError("convention map has no entry for type " + id);
  }
  return it->second;
}

ConventionMap SelectConventions(const GameCatalog& catalog,
                                TieBreakPolicy policy,
                                const SolverOptions& options) {
  ConventionMap map;
  for (const auto& [id, game] : catalog.entries()) {
    const EquilibriumSet pone =
        ParetoOptimalSubset(EnumerateNash(game, options));
    map.Set(id, SelectConvention(pone, policy));
  }
  return map;
}

json ConventionMapToJson(const ConventionMap& conventions) {
  json doc = json::object();
  for (const auto& [id, profile] : conventions.profiles()) {
    doc[id] = json{{"s1", profile.s1.probs()}, {"s2", profile.s2.probs()}};
  }
  return doc;
}

ConventionMap ConventionMapFromJson(const json& doc, const GameCatalog& catalog,
                                    const SolverOptions& options) {
  if (!doc.is_object()) {
    throw InvalidInputError("convention document must be an object");
  }
  ConventionMap map;
  for (const auto& [id, entry] : doc.items()) {
    if (!catalog.contains(id)) {
      throw InvalidInputError("convention for unknown type " + id);
    }
    if (!entry.is_object() || !entry.contains("s1") || !entry.contains("s2")) {
      throw InvalidInputError("convention for " + id + " needs s1 and s2");
    }
    const MatrixGame& game = catalog.at(id);
    MixedStrategy s1(entry.at("s1").get<std::vector<double>>());
    MixedStrategy s2(entry.at("s2").get<std::vector<double>>());
    if (s1.size() != game.num_actions() || s2.size() != game.num_actions()) {
      throw InvalidInputError("convention for " + id +
                              " has the wrong dimension");
    }
    if (!IsParetoOptimalNash(game, s1, s2, EnumerateNash(game, options))) {
      throw InvalidInputError("convention for " + id +
                              " is not a Pareto-optimal Nash equilibrium");
    }
    map.Set(id, MakeProfile(game, std::move(s1), std::move(s2)));
  }
  return map;
}

json EquilibriumSetToJson(const EquilibriumSet& equilibria) {
  json profiles = json::array();
  for (const auto& p : equilibria.profiles) {
    profiles.push_back(json{{"s1", p.s1.probs()},
                            {"s2", p.s2.probs()},
                            {"payoffs", {p.payoffs.p1, p.payoffs.p2}},
                            {"support_1", p.support_1},
                            {"support_2", p.support_2}});
  }
  return json{{"complete_vertex_enumeration",
               equilibria.complete_vertex_enumeration},
              {"profiles", std::move(profiles)}};
}

}  // namespace si_bench
