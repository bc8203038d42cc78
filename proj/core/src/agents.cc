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

#include "si_bench/agents.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "si_bench/errors.h"
#include "si_bench/format.h"

namespace si_bench {

std::string AgentSpec::DisplayName() const {
  return label.empty() ? std::string(AgentKindName(kind)) : label;
}

bool UsesConvention(AgentKind kind) {
  return kind == AgentKind::kStochasticFallback ||
         kind == AgentKind::kAdversarialFallback;
}

MixedStrategy Agent::Act(HistoryView history) {
  const int len = static_cast<int>(history.size());
  if (len < observed_) {
    throw InvalidInputError("history is shorter than what the agent has seen");
  }
  if (observed_ > 0 && history[observed_ - 1] != *last_stage_) {
    throw InvalidInputError("history was rewritten after the agent saw it");
  }
  const int n = game_->num_actions();
  for (int t = observed_; t < len; ++t) {
    const JointAction& joint = history[t];
    if (joint.a1 < 0 || joint.a1 >= n || joint.a2 < 0 || joint.a2 >= n) {
      throw InvalidInputError("action out of range at stage " +
                              std::to_string(t + 1));
    }
    const MixedStrategy* own = nullptr;
    if (t == observed_ && last_strategy_) {
      own = &*last_strategy_;
      if (!((*own)[joint.Of(seat_)] > 0.0)) {
        throw InvalidInputError(
            "stage " + std::to_string(t + 1) + ": player " +
            std::to_string(SeatNumber(seat_)) +
            " realized an action its strategy gave zero probability");
      }
    }
    Observe(joint, own);
    if (own != nullptr) last_strategy_.reset();
    last_stage_ = joint;
    observed_ = t + 1;
  }
  MixedStrategy strategy = Decide();
  last_strategy_ = strategy;
  return strategy;
}

MultiplicativeWeights::MultiplicativeWeights(int num_actions, double eta)
    : eta_(eta), log_weights_(num_actions, 0.0) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw InvalidInputError("learning rate must be positive, got " +
                            FormatDouble(eta));
  }
}

std::vector<double> MultiplicativeWeights::Weights() const {
  const double top = *std::max_element(log_weights_.begin(), log_weights_.end());
  std::vector<double> weights(log_weights_.size());
  double total = 0.0;
  for (size_t a = 0; a < weights.size(); ++a) {
    weights[a] = std::exp(log_weights_[a] - top);
    total += weights[a];
  }
  for (double& w : weights) w /= total;
  return weights;
}

MixedStrategy MultiplicativeWeights::Strategy() const {
  return MixedStrategy(Weights());
}

void MultiplicativeWeights::UpdateWithPayoffs(std::span<const double> payoffs) {
  for (size_t a = 0; a < log_weights_.size(); ++a) {
    log_weights_[a] += eta_ * payoffs[a];
  }
}

MixedStrategy MultiplicativeWeights::Update(const MatrixGame& game, Seat seat,
                                            Action partner_action) {
  UpdateWithPayoffs(game.SeatPayoffs(seat, partner_action));
  return Strategy();
}

double DefaultMwLearningRate(int num_actions, int horizon) {
  if (num_actions < 2 || horizon < 1) {
    throw InvalidInputError("learning rate needs N >= 2 and T >= 1");
  }
  return std::sqrt(8.0 * std::log(static_cast<double>(num_actions)) / horizon);
}

namespace {

void CheckDomain(int horizon, double delta) {
  if (horizon < 1) throw InvalidInputError("horizon must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidInputError("delta must lie in (0, 1), got " +
                            FormatDouble(delta));
  }
}

}  // namespace

StochasticSiParameters StochasticFallbackParameters(int horizon,
                                                    double delta) {
  CheckDomain(horizon, delta);
  const double t = static_cast<double>(horizon);
  const double epsilon0 = 2.0 * std::sqrt(2.0 / t * std::log(4.0 / delta));
  return {epsilon0, epsilon0 + 1.0 / t};
}

AdversarialSiParameters AdversarialFallbackParameters(int horizon,
                                                      double delta,
                                                      int num_actions) {
  CheckDomain(horizon, delta);
  if (num_actions < 2) throw InvalidInputError("need N >= 2");
  const double t = static_cast<double>(horizon);
  const double epsilon0 = std::sqrt(2.0 / t * std::log(2.0 / delta));
  const double epsilon1 =
      epsilon0 + std::sqrt(std::log(static_cast<double>(num_actions)) / (2.0 * t)) +
      1.0 / t;
  const double epsilon = epsilon1 + std::sqrt(std::log(1.0 / delta) / (2.0 * t));
  return {epsilon0, epsilon1, epsilon};
}

double AdversarialSwitchThreshold(double epsilon1, int horizon,
                                  int num_actions) {
  const double t = static_cast<double>(horizon);
  return epsilon1 * t -
         std::sqrt(0.5 * t * std::log(static_cast<double>(num_actions))) - 1.0;
}

namespace {

class FictitiousPlay final : public Agent {
 public:
  FictitiousPlay(const MatrixGame& game, Seat seat)
      : Agent(game, seat), table_(game.num_actions()) {}

 protected:
  void Observe(JointAction joint, const MixedStrategy*) override {
    table_.Update(game(), seat(), joint);
  }
  MixedStrategy Decide() override { return table_.FictitiousPlayStrategy(); }

 private:
  CumulativePayoffTable table_;
};

class MultiplicativeWeightsLearner final : public Agent {
 public:
  MultiplicativeWeightsLearner(const MatrixGame& game, Seat seat, double eta)
      : Agent(game, seat), weights_(game.num_actions(), eta) {}

 protected:
  void Observe(JointAction joint, const MixedStrategy*) override {
    weights_.UpdateWithPayoffs(game().SeatPayoffs(seat(), PartnerAction(joint)));
  }
  MixedStrategy Decide() override { return weights_.Strategy(); }

 private:
  MultiplicativeWeights weights_;
};

// Plays the convention while realized stochastic regret stays below
// epsilon*T - 1, then fictitious play for the rest of the match.
class StochasticFallback final : public Agent {
 public:
  StochasticFallback(const MatrixGame& game, Seat seat,
                     MixedStrategy convention, double epsilon, int horizon)
      : Agent(game, seat),
        table_(game.num_actions()),
        convention_(std::move(convention)),
        threshold_(epsilon * horizon - 1.0) {}

  std::optional<int> switch_stage() const override { return switch_stage_; }

 protected:
  void Observe(JointAction joint, const MixedStrategy*) override {
    table_.Update(game(), seat(), joint);
  }
  MixedStrategy Decide() override {
    if (!switch_stage_ && table_.StochasticRegret() >= threshold_) {
      switch_stage_ = table_.stages() + 1;
    }
    return switch_stage_ ? table_.FictitiousPlayStrategy() : convention_;
  }

 private:
  CumulativePayoffTable table_;
  MixedStrategy convention_;
  double threshold_;
  std::optional<int> switch_stage_;
};

// Plays the convention while its own expected external regret stays at or
// below epsilon1*T - sqrt((T/2) ln N) - 1, then multiplicative weights,
// restarted from uniform, for the rest of the match.
class AdversarialFallback final : public Agent {
 public:
  AdversarialFallback(const MatrixGame& game, Seat seat,
                      MixedStrategy convention, double epsilon1, int horizon,
                      double eta)
      : Agent(game, seat),
        table_(game.num_actions()),
        convention_(std::move(convention)),
        threshold_(AdversarialSwitchThreshold(epsilon1, horizon,
                                              game.num_actions())),
        eta_(eta) {}

  std::optional<int> switch_stage() const override { return switch_stage_; }

 protected:
  void Observe(JointAction joint, const MixedStrategy* own) override {
    if (own == nullptr) {
      throw InvalidInputError(
          "adversarial fallback must see its own strategy for every stage");
    }
    table_.Update(game(), seat(), joint, own);
    if (weights_) {
      weights_->UpdateWithPayoffs(
          game().SeatPayoffs(seat(), PartnerAction(joint)));
    }
  }
  MixedStrategy Decide() override {
    if (!switch_stage_ && table_.ExpectedExternalRegret() > threshold_) {
      switch_stage_ = table_.stages() + 1;
      weights_.emplace(game().num_actions(), eta_);
    }
    return weights_ ? weights_->Strategy() : convention_;
  }

 private:
  CumulativePayoffTable table_;
  MixedStrategy convention_;
  double threshold_;
  double eta_;
  std::optional<int> switch_stage_;
  std::optional<MultiplicativeWeights> weights_;
};

class Constant final : public Agent {
 public:
  Constant(const MatrixGame& game, Seat seat, Action action)
      : Agent(game, seat),
        strategy_(MixedStrategy::Pure(game.num_actions(), action)) {}

 protected:
  void Observe(JointAction, const MixedStrategy*) override {}
  MixedStrategy Decide() override { return strategy_; }

 private:
  MixedStrategy strategy_;
};

class UniformRandom final : public Agent {
 public:
  UniformRandom(const MatrixGame& game, Seat seat)
      : Agent(game, seat), strategy_(MixedStrategy::Uniform(game.num_actions())) {}

 protected:
  void Observe(JointAction, const MixedStrategy*) override {}
  MixedStrategy Decide() override { return strategy_; }

 private:
  MixedStrategy strategy_;
};

// Pure best response to the partner's empirical action frequencies, ties to
// the lowest index.
class BestResponseExploiterAgent final : public Agent {
 public:
  BestResponseExploiterAgent(const MatrixGame& game, Seat seat)
      : Agent(game, seat), table_(game.num_actions()) {}

 protected:
  void Observe(JointAction joint, const MixedStrategy*) override {
    table_.Update(game(), seat(), joint);
  }
  MixedStrategy Decide() override {
    const auto& totals = table_.per_action();
    const Action best = static_cast<Action>(
        std::max_element(totals.begin(), totals.end()) - totals.begin());
    return MixedStrategy::Pure(game().num_actions(), best);
  }

 private:
  CumulativePayoffTable table_;
};

// Minimizes the partner's expected stage payoff against an estimate of the
// partner's strategy: its empirical action frequencies, or its actual current
// strategy in white-box mode.
class RegretAdversaryAgent final : public Agent {
 public:
  RegretAdversaryAgent(const MatrixGame& game, Seat seat, bool white_box)
      : Agent(game, seat), counts_(game.num_actions(), 0.0), white_box_(white_box) {}

  bool wants_partner_strategy() const override { return white_box_; }
  void ObservePartnerStrategy(const MixedStrategy& partner) override {
    partner_strategy_ = partner;
  }

 protected:
  void Observe(JointAction joint, const MixedStrategy*) override {
    counts_[PartnerAction(joint)] += 1.0;
    ++stages_;
  }
  MixedStrategy Decide() override {
    const int n = game().num_actions();
    std::vector<double> estimate(n, 1.0 / n);
    if (white_box_ && partner_strategy_) {
      estimate = partner_strategy_->probs();
    } else if (stages_ > 0) {
      for (int a = 0; a < n; ++a) estimate[a] = counts_[a] / stages_;
    }
    const Seat partner = OtherSeat(seat());
    Action worst = 0;
    double worst_payoff = std::numeric_limits<double>::infinity();
    for (Action own = 0; own < n; ++own) {
      double payoff = 0.0;
      for (Action p = 0; p < n; ++p) {
        payoff += estimate[p] * game().SeatPayoff(partner, p, own);
      }
      if (payoff < worst_payoff) {
        worst_payoff = payoff;
        worst = own;
      }
    }
    return MixedStrategy::Pure(n, worst);
  }

 private:
  std::vector<double> counts_;
  int stages_ = 0;
  bool white_box_;
  std::optional<MixedStrategy> partner_strategy_;
};

// Plays its half of a joint code sequence. If the partner plays its half of
// every code stage, control passes to the inner agent, which sees only the
// post-code history. On the first mismatch it switches to a consistent
// learner for the rest of the match.
class SecretCode final : public Agent {
 public:
  SecretCode(const MatrixGame& game, Seat seat, std::vector<JointAction> code,
             std::unique_ptr<Agent> inner, AgentSpec learner, TypeId type_id,
             int horizon)
      : Agent(game, seat),
        code_(std::move(code)),
        inner_(std::move(inner)),
        learner_spec_(std::move(learner)),
        type_id_(std::move(type_id)),
        horizon_(horizon) {}

  std::optional<int> switch_stage() const override {
    if (learner_) return switch_stage_;
    if (const auto inner = inner_->switch_stage()) {
      return *inner + static_cast<int>(code_.size());
    }
    return std::nullopt;
  }

 protected:
  void Observe(JointAction joint, const MixedStrategy*) override {
    const size_t t = history_.size();
    history_.push_back(joint);
    if (!learner_ && t < code_.size() &&
        PartnerAction(joint) != code_[t].PartnerOf(seat())) {
      switch_stage_ = static_cast<int>(t) + 2;
      learner_ = MakeAgent(learner_spec_, game(), type_id_, seat(), horizon_);
    }
  }
  MixedStrategy Decide() override {
    if (learner_) return learner_->Act(history_);
    const size_t t = history_.size();
    if (t < code_.size()) {
      return MixedStrategy::Pure(game().num_actions(), code_[t].Of(seat()));
    }
    return inner_->Act(HistoryView(history_).subspan(code_.size()));
  }

 private:
  std::vector<JointAction> code_;
  std::unique_ptr<Agent> inner_;
  AgentSpec learner_spec_;
  TypeId type_id_;
  int horizon_;
  History history_;
  std::unique_ptr<Agent> learner_;
  std::optional<int> switch_stage_;
};

const MixedStrategy& ConventionFor(const AgentSpec& spec, const MatrixGame& game,
                                   const TypeId& type_id, Seat seat) {
  if (spec.convention == nullptr) {
    throw InvalidInputError(std::string(AgentKindName(spec.kind)) +
                            " agent has no convention map");
  }
  const MixedStrategy& s = spec.convention->at(type_id).strategy(seat);
  if (s.size() != game.num_actions()) {
    throw InvalidInputError("convention for " + type_id +
                            " does not match the game's action count");
  }
  return s;
}

double RequireEpsilon(const AgentSpec& spec) {
  if (!spec.params.epsilon || !(*spec.params.epsilon > 0.0)) {
    throw InvalidInputError(std::string(AgentKindName(spec.kind)) +
                            " agent needs a positive epsilon");
  }
  return *spec.params.epsilon;
}

}  // namespace

std::unique_ptr<Agent> MakeAgent(const AgentSpec& spec, const MatrixGame& game,
                                 const TypeId& type_id, Seat seat,
                                 int horizon) {
  const int t = spec.params.horizon.value_or(horizon);
  if (t < 1) throw InvalidInputError("agent horizon must be >= 1");
  const int n = game.num_actions();
  auto eta = [&] {
    return spec.params.eta ? *spec.params.eta : DefaultMwLearningRate(n, t);
  };

  switch (spec.kind) {
    case AgentKind::kFictitiousPlay:
      return std::make_unique<FictitiousPlay>(game, seat);
    case AgentKind::kMultiplicativeWeights:
      return std::make_unique<MultiplicativeWeightsLearner>(game, seat, eta());
    case AgentKind::kStochasticFallback:
      return std::make_unique<StochasticFallback>(
          game, seat, ConventionFor(spec, game, type_id, seat),
          RequireEpsilon(spec), t);
    case AgentKind::kAdversarialFallback:
      return std::make_unique<AdversarialFallback>(
          game, seat, ConventionFor(spec, game, type_id, seat),
          RequireEpsilon(spec), t, eta());
    case AgentKind::kConstant:
      if (spec.params.action < 0 || spec.params.action >= n) {
        throw InvalidInputError("constant action out of range");
      }
      return std::make_unique<Constant>(game, seat, spec.params.action);
    case AgentKind::kUniformRandom:
      return std::make_unique<UniformRandom>(game, seat);
    case AgentKind::kBestResponseExploiter:
      return std::make_unique<BestResponseExploiterAgent>(game, seat);
    case AgentKind::kRegretAdversary:
      return std::make_unique<RegretAdversaryAgent>(game, seat,
                                                    spec.params.white_box);
    case AgentKind::kSecretCode: {
      if (spec.params.inner == nullptr) {
        throw InvalidInputError("secret_code agent needs an inner agent");
      }
      for (const JointAction& joint : spec.params.code) {
        if (joint.a1 < 0 || joint.a1 >= n || joint.a2 < 0 || joint.a2 >= n) {
          throw InvalidInputError("secret code action out of range");
        }
      }
      const int remaining = t - static_cast<int>(spec.params.code.size());
      auto inner = MakeAgent(*spec.params.inner, game, type_id, seat,
                             std::max(remaining, 1));
      AgentSpec learner;
      learner.kind = spec.params.on_mismatch;
      learner.params.horizon = t;
      if (learner.kind != AgentKind::kFictitiousPlay &&
          learner.kind != AgentKind::kMultiplicativeWeights) {
        throw InvalidInputError(
            "on_mismatch must be fictitious_play or multiplicative_weights");
      }
      return std::make_unique<SecretCode>(game, seat, spec.params.code,
                                          std::move(inner), std::move(learner),
                                          type_id, t);
    }
  }
  throw InvalidInputError("unknown agent kind");
}

AgentSpec ConstantAgent(Action action) {
  if (action < 0) throw InvalidInputError("constant action must be >= 0");
  AgentSpec spec;
  spec.kind = AgentKind::kConstant;
  spec.params.action = action;
  spec.label = "constant_" + std::to_string(action);
  return spec;
}

AgentSpec UniformRandomAgent() {
  AgentSpec spec;
  spec.kind = AgentKind::kUniformRandom;
  return spec;
}

AgentSpec BestResponseExploiter() {
  AgentSpec spec;
  spec.kind = AgentKind::kBestResponseExploiter;
  return spec;
}

AgentSpec RegretAdversary(bool white_box) {
  AgentSpec spec;
  spec.kind = AgentKind::kRegretAdversary;
  spec.params.white_box = white_box;
  if (white_box) spec.label = "regret_adversary_white_box";
  return spec;
}

AgentSpec SecretCodeAgent(std::vector<JointAction> code,
                          std::shared_ptr<const AgentSpec> inner,
                          AgentKind on_mismatch) {
  if (inner == nullptr) throw InvalidInputError("secret code needs an inner agent");
  if (on_mismatch != AgentKind::kFictitiousPlay &&
      on_mismatch != AgentKind::kMultiplicativeWeights) {
    throw InvalidInputError(
        "on_mismatch must be fictitious_play or multiplicative_weights");
  }
  AgentSpec spec;
  spec.kind = AgentKind::kSecretCode;
  spec.params.code = std::move(code);
  spec.params.inner = std::move(inner);
  spec.params.on_mismatch = on_mismatch;
  return spec;
}

AgentSpec FictitiousPlayAgent() {
  AgentSpec spec;
  spec.kind = AgentKind::kFictitiousPlay;
  return spec;
}

AgentSpec MultiplicativeWeightsAgent(std::optional<double> eta) {
  if (eta && !(*eta > 0.0)) throw InvalidInputError("eta must be positive");
  AgentSpec spec;
  spec.kind = AgentKind::kMultiplicativeWeights;
  spec.params.eta = eta;
  return spec;
}

AgentSpec StochasticFallbackAgent(std::shared_ptr<const ConventionMap> convention,
                                  std::optional<double> epsilon) {
  AgentSpec spec;
  spec.kind = AgentKind::kStochasticFallback;
  spec.convention = std::move(convention);
  spec.params.epsilon = epsilon;
  return spec;
}

AgentSpec AdversarialFallbackAgent(
    std::shared_ptr<const ConventionMap> convention,
    std::optional<double> epsilon1) {
  AgentSpec spec;
  spec.kind = AgentKind::kAdversarialFallback;
  spec.convention = std::move(convention);
  spec.params.epsilon = epsilon1;
  return spec;
}

}  // namespace si_bench
