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

#ifndef SI_BENCH_EQUILIBRIA_H_
#define SI_BENCH_EQUILIBRIA_H_

// Nash equilibria of a stage game by support enumeration, the Pareto-optimal
// subset (PONE), and conventions: a chosen PONE per type.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "si_bench/catalog.h"
#include "si_bench/game.h"

namespace si_bench {

inline constexpr double kSolveTolerance = 1e-9;
inline constexpr double kVerifyTolerance = 1e-7;
inline constexpr double kDominanceTolerance = 1e-9;
inline constexpr int kDefaultMaxSolverActions = 5;

struct EquilibriumProfile {
  MixedStrategy s1;
  MixedStrategy s2;
  PayoffProfile payoffs;
  std::vector<Action> support_1;
  std::vector<Action> support_2;

  const MixedStrategy& strategy(Seat seat) const {
    return seat == Seat::kPlayer1 ? s1 : s2;
  }
  // Both strategies within `tol` coordinatewise.
  bool SameProfile(const EquilibriumProfile& other, double tol) const;
};

struct EquilibriumSet {
  std::vector<EquilibriumProfile> profiles;
  // False when some support pair had a non-unique solution, so the profiles
  // are representatives of equilibrium components rather than all vertices.
  bool complete_vertex_enumeration = true;

  size_t size() const { return profiles.size(); }
  bool empty() const { return profiles.empty(); }
};

struct SolverOptions {
  double tol = kSolveTolerance;
  double verify_tol = kVerifyTolerance;
  int max_actions = kDefaultMaxSolverActions;
};

// All equilibria reachable by support enumeration: equal-size support pairs
// first, then unequal ones. For each pair the indifference systems are solved
// and the candidate is kept if it is nonnegative, admits no profitable
// deviation outside the supports, and passes IsNash at verify_tol.
//
// Throws UnsupportedSizeError when N exceeds options.max_actions.
EquilibriumSet EnumerateNash(const MatrixGame& game,
                             const SolverOptions& options = {});

struct NashCheck {
  bool is_nash = false;
  double max_gain_1 = 0.0;  // best pure-deviation gain for player 1
  double max_gain_2 = 0.0;

  double max_gain() const { return max_gain_1 > max_gain_2 ? max_gain_1 : max_gain_2; }
  explicit operator bool() const { return is_nash; }
};

// No pure deviation improves either player's expected payoff by more than tol.
NashCheck IsNash(const MatrixGame& game, const MixedStrategy& s1,
                 const MixedStrategy& s2, double tol = kVerifyTolerance);

// Keeps the profiles not strongly Pareto-dominated within the set: s is
// dropped iff some s' has G1(s') > G1(s) + tol and G2(s') > G2(s) + tol.
EquilibriumSet ParetoOptimalSubset(const EquilibriumSet& equilibria,
                                   double tol = kDominanceTolerance);

// True when (s1, s2) is a Nash equilibrium that no profile of `equilibria`
// strongly Pareto-dominates.
bool IsParetoOptimalNash(const MatrixGame& game, const MixedStrategy& s1,
                         const MixedStrategy& s2,
                         const EquilibriumSet& equilibria);

enum class TieBreakPolicy {
  // Max p1 + p2, then max p1, then lexicographically smallest (s1, s2).
  kWelfareLex,
};

TieBreakPolicy ParseTieBreakPolicy(std::string_view name);
std::string_view TieBreakPolicyName(TieBreakPolicy policy);

// Picks one profile from a non-empty PONE set by the policy.
const EquilibriumProfile& SelectConvention(const EquilibriumSet& pone,
                                           TieBreakPolicy policy);

// s(theta): one PONE profile per type.
class ConventionMap {
 public:
  void Set(const TypeId& id, EquilibriumProfile profile);
  const EquilibriumProfile& at(const TypeId& id) const;
  bool contains(const TypeId& id) const { return profiles_.count(id) > 0; }
  const std::map<TypeId, EquilibriumProfile>& profiles() const {
    return profiles_;
  }

 private:
  std::map<TypeId, EquilibriumProfile> profiles_;
};

ConventionMap SelectConventions(
    const GameCatalog& catalog,
    TieBreakPolicy policy = TieBreakPolicy::kWelfareLex,
    const SolverOptions& options = {});

// { "<type_id>": { "s1": [...], "s2": [...] }, ... }
nlohmann::json ConventionMapToJson(const ConventionMap& conventions);

// Rebuilds profiles against the catalog and checks that each one is a PONE
// of its game. Throws InvalidInputError otherwise, or for unknown type ids.
ConventionMap ConventionMapFromJson(const nlohmann::json& doc,
                                    const GameCatalog& catalog,
                                    const SolverOptions& options = {});

// Builds a profile record (payoffs, supports) for a strategy pair.
EquilibriumProfile MakeProfile(const MatrixGame& game, MixedStrategy s1,
                               MixedStrategy s2);

nlohmann::json EquilibriumSetToJson(const EquilibriumSet& equilibria);

}  // namespace si_bench

#endif  // SI_BENCH_EQUILIBRIA_H_
