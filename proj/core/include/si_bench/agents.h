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

#ifndef SI_BENCH_AGENTS_H_
#define SI_BENCH_AGENTS_H_

// Agents for repeated matrix games.
//
// An agent is constructed for one (type, seat, horizon) and asked for a mixed
// strategy once per stage. It only ever sees realized joint actions; the
// partner's mixed strategies are hidden (white-box test adversaries aside).

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "si_bench/catalog.h"
#include "si_bench/equilibria.h"
#include "si_bench/game.h"
#include "si_bench/regret.h"

namespace si_bench {

enum class AgentKind {
  kFictitiousPlay,
  kMultiplicativeWeights,
  kStochasticFallback,
  kAdversarialFallback,
  kConstant,
  kUniformRandom,
  kBestResponseExploiter,
  kRegretAdversary,
  kSecretCode,
};

std::string_view AgentKindName(AgentKind kind);
AgentKind ParseAgentKind(std::string_view name);
bool UsesConvention(AgentKind kind);

struct AgentSpec;

struct AgentParams {
  // Horizon T the agent plans for; unset means the match horizon.
  std::optional<int> horizon;
  // Stochastic fallback: switch once realized stochastic regret reaches
  // epsilon*T - 1. Adversarial fallback: this is epsilon_1, and the agent
  // switches once its expected external regret exceeds
  // epsilon_1*T - sqrt((T/2) ln N) - 1.
  std::optional<double> epsilon;
  // Multiplicative-weights learning rate; unset means sqrt(8 ln N / T).
  std::optional<double> eta;
  // Constant agent.
  Action action = 0;
  // Secret code: the joint sequence both seats are expected to play first.
  std::vector<JointAction> code;
  // Secret code: the agent followed once the code has been matched.
  std::shared_ptr<const AgentSpec> inner;
  // Secret code: the learner used after a mismatch (fictitious play or
  // multiplicative weights).
  AgentKind on_mismatch = AgentKind::kFictitiousPlay;
  // Regret adversary: read the partner's current mixed strategy instead of
  // estimating it from realized actions. Test-only.
  bool white_box = false;
};

struct AgentSpec {
  AgentKind kind = AgentKind::kFictitiousPlay;
  std::string label;
  AgentParams params;
  // Fallback agents: s(theta) for every type they may face. Two fallback
  // agents belong to the same class iff they share this map.
  std::shared_ptr<const ConventionMap> convention;
  // Where the convention came from, for serialization. Empty means inline.
  std::string convention_ref;

  std::string DisplayName() const;
};

class Agent {
 public:
  Agent(const MatrixGame& game, Seat seat) : game_(&game), seat_(seat) {}
  virtual ~Agent() = default;
  Agent(const Agent&) = delete;
  Agent& operator=(const Agent&) = delete;

  // Strategy for stage history.size() + 1. Each call must pass the same
  // history as the previous call extended by zero or more stages, and the
  // agent's own realized actions must have had positive probability under
  // the strategies it returned; otherwise InvalidInputError.
  MixedStrategy Act(HistoryView history);

  Seat seat() const { return seat_; }
  const MatrixGame& game() const { return *game_; }
  int observed_stages() const { return observed_; }

  // Stage at which a fallback-style agent left its initial behaviour.
  virtual std::optional<int> switch_stage() const { return std::nullopt; }

  // White-box support: the harness hands over the partner's strategy for the
  // current stage before calling Act().
  virtual bool wants_partner_strategy() const { return false; }
  virtual void ObservePartnerStrategy(const MixedStrategy& /*partner*/) {}

 protected:
  // Incorporates one completed stage. `own` is the strategy this agent
  // returned for that stage, or null if the stage predates the agent.
  virtual void Observe(JointAction joint, const MixedStrategy* own) = 0;
  // Strategy for the next stage.
  virtual MixedStrategy Decide() = 0;

  Action PartnerAction(JointAction joint) const { return joint.PartnerOf(seat_); }

 private:
  const MatrixGame* game_;
  Seat seat_;
  int observed_ = 0;
  std::optional<MixedStrategy> last_strategy_;
  std::optional<JointAction> last_stage_;
};

// Builds an agent for one seat of one match. `horizon` is the match length,
// used when spec.params.horizon is unset. The game must outlive the agent.
// Throws InvalidInputError for invalid parameters or a convention that does
// not cover `type_id`.
std::unique_ptr<Agent> MakeAgent(const AgentSpec& spec, const MatrixGame& game,
                                 const TypeId& type_id, Seat seat, int horizon);

// Exponential weights on payoffs, kept in log space.
class MultiplicativeWeights {
 public:
  MultiplicativeWeights(int num_actions, double eta);

  MixedStrategy Strategy() const;
  // Multiplies each action's weight by exp(+eta * payoff against
  // partner_action) and returns the renormalized strategy.
  MixedStrategy Update(const MatrixGame& game, Seat seat, Action partner_action);
  void UpdateWithPayoffs(std::span<const double> payoffs);

  double eta() const { return eta_; }
  // Normalized weights; every entry is strictly positive.
  std::vector<double> Weights() const;

 private:
  double eta_;
  std::vector<double> log_weights_;
};

// sqrt(8 ln N / T). Requires N >= 2 and T >= 1.
double DefaultMwLearningRate(int num_actions, int horizon);

struct StochasticSiParameters {
  double epsilon0;  // 2 sqrt((2/T) ln(4/delta))
  double epsilon;   // epsilon0 + 1/T
};
// Smallest thresholds under which the stochastic fallback is certified.
StochasticSiParameters StochasticFallbackParameters(int horizon, double delta);

struct AdversarialSiParameters {
  double epsilon0;  // sqrt((2/T) ln(2/delta))
  double epsilon1;  // epsilon0 + sqrt(ln N / (2T)) + 1/T
  double epsilon;   // epsilon1 + sqrt(ln(1/delta) / (2T))
};
AdversarialSiParameters AdversarialFallbackParameters(int horizon,
                                                      double delta,
                                                      int num_actions);

// Switch threshold of the adversarial fallback: epsilon1*T - sqrt((T/2) ln N) - 1.
double AdversarialSwitchThreshold(double epsilon1, int horizon,
                                  int num_actions);

// Partner-zoo constructors. Throw InvalidInputError on invalid parameters.
AgentSpec ConstantAgent(Action action);
AgentSpec UniformRandomAgent();
AgentSpec BestResponseExploiter();
AgentSpec RegretAdversary(bool white_box = false);
AgentSpec SecretCodeAgent(std::vector<JointAction> code,
                          std::shared_ptr<const AgentSpec> inner,
                          AgentKind on_mismatch = AgentKind::kFictitiousPlay);
AgentSpec FictitiousPlayAgent();
AgentSpec MultiplicativeWeightsAgent(std::optional<double> eta = std::nullopt);
AgentSpec StochasticFallbackAgent(std::shared_ptr<const ConventionMap> convention,
                                  std::optional<double> epsilon = std::nullopt);
AgentSpec AdversarialFallbackAgent(
    std::shared_ptr<const ConventionMap> convention,
    std::optional<double> epsilon1 = std::nullopt);

// Agent documents:
//   { "kind": "stochastic_fallback", "label": "...",
//     "params": { "horizon": 1000, "epsilon": 0.06, "eta": 0.1,
//                 "action": 0, "code": [[0, 0], [1, 1]],
//                 "inner": { <agent document> }, "on_mismatch": "...",
//                 "white_box": false },
//     "convention_ref": "conventions.json" | { <convention document> } }
//
// A fallback agent without convention_ref uses `default_convention`.
nlohmann::json AgentSpecToJson(const AgentSpec& spec);
AgentSpec AgentSpecFromJson(
    const nlohmann::json& doc, const GameCatalog& catalog,
    const std::filesystem::path& base_dir,
    std::shared_ptr<const ConventionMap> default_convention = nullptr);

}  // namespace si_bench

#endif  // SI_BENCH_AGENTS_H_
