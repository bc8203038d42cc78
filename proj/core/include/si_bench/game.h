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

#ifndef SI_BENCH_GAME_H_
#define SI_BENCH_GAME_H_

// Stage games, strategies, histories and payoff accounting for repeated
// two-player N x N matrix games.
//
// Conventions used throughout the library:
//  - actions are 0-indexed, in [0, N);
//  - stage numbers are 1-indexed, in [1, T]; a history of length t holds the
//    joint actions of stages 1..t;
//  - payoff matrices are row-major with row = player-1 action and
//    column = player-2 action, for both players.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace si_bench {

using Action = int;
using TypeId = std::string;
using Matrix = std::vector<std::vector<double>>;

enum class Seat : int { kPlayer1 = 0, kPlayer2 = 1 };

constexpr Seat OtherSeat(Seat seat) {
  return seat == Seat::kPlayer1 ? Seat::kPlayer2 : Seat::kPlayer1;
}
constexpr int SeatIndex(Seat seat) { return static_cast<int>(seat); }
// 1 or 2, the player id used in documents and reports.
constexpr int SeatNumber(Seat seat) { return SeatIndex(seat) + 1; }
Seat SeatFromNumber(int number);

struct JointAction {
  Action a1 = 0;
  Action a2 = 0;

  Action Of(Seat seat) const { return seat == Seat::kPlayer1 ? a1 : a2; }
  Action PartnerOf(Seat seat) const { return Of(OtherSeat(seat)); }
  friend bool operator==(const JointAction&, const JointAction&) = default;
};

using History = std::vector<JointAction>;
using HistoryView = std::span<const JointAction>;

struct PayoffProfile {
  double p1 = 0.0;
  double p2 = 0.0;

  double Of(Seat seat) const { return seat == Seat::kPlayer1 ? p1 : p2; }
};

// A probability distribution over N actions.
//
// Inputs whose sum is within kRenormalizeTolerance of 1 are rescaled to sum
// to 1; anything further off, or any entry below -kSumTolerance, is rejected.
class MixedStrategy {
 public:
  static constexpr double kSumTolerance = 1e-12;
  static constexpr double kRenormalizeTolerance = 1e-9;

  explicit MixedStrategy(std::vector<double> probs);

  static MixedStrategy Pure(int num_actions, Action action);
  static MixedStrategy Uniform(int num_actions);
  // Uniform over the actions whose flag is set. At least one must be set.
  static MixedStrategy UniformOver(const std::vector<bool>& actions);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](Action a) const { return probs_[a]; }
  const std::vector<double>& probs() const { return probs_; }

  // Actions with probability strictly greater than `tol`.
  std::vector<Action> Support(double tol = 0.0) const;
  bool IsPure() const;
  double MaxAbsDifference(const MixedStrategy& other) const;

  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;

 private:
  std::vector<double> probs_;
};

struct GameValidation {
  int rows_1 = 0;
  int rows_2 = 0;
  bool shape_ok = false;   // both matrices square, same N >= 2
  bool finite = false;     // every entry finite
  bool normalized = false; // every entry in [0, 1]
  std::vector<std::string> problems;

  bool ok() const { return shape_ok && finite; }
};

// Checks squareness, dimension agreement, finiteness and [0,1] membership.
GameValidation ValidateGame(const Matrix& payoff_1, const Matrix& payoff_2);

// One stage game G(theta): a pair of N x N payoff matrices.
class MatrixGame {
 public:
  // Throws InvalidInputError if ValidateGame() reports a shape or finiteness
  // problem. Games outside [0,1] are accepted with normalized() == false.
  MatrixGame(const Matrix& payoff_1, const Matrix& payoff_2);

  int num_actions() const { return n_; }
  bool normalized() const { return normalized_; }

  double payoff_1(Action a1, Action a2) const { return payoff_[0][a1 * n_ + a2]; }
  double payoff_2(Action a1, Action a2) const { return payoff_[1][a1 * n_ + a2]; }
  double Payoff(Seat seat, JointAction joint) const {
    return payoff_[SeatIndex(seat)][joint.a1 * n_ + joint.a2];
  }
  // Payoff to `seat` for playing `own` while the partner plays `partner`.
  double SeatPayoff(Seat seat, Action own, Action partner) const {
    return by_partner_[SeatIndex(seat)][partner * n_ + own];
  }
  // Payoffs of every own action of `seat` against the partner action.
  std::span<const double> SeatPayoffs(Seat seat, Action partner) const {
    return std::span<const double>(by_partner_[SeatIndex(seat)])
        .subspan(static_cast<size_t>(partner) * n_, n_);
  }

  Matrix PayoffMatrix(Seat seat) const;

  friend bool operator==(const MatrixGame& a, const MatrixGame& b) {
    return a.n_ == b.n_ && a.payoff_[0] == b.payoff_[0] &&
           a.payoff_[1] == b.payoff_[1];
  }

 private:
  int n_;
  bool normalized_;
  std::vector<double> payoff_[2];      // row-major, [a1 * n + a2]
  std::vector<double> by_partner_[2];  // seat-relative, [partner * n + own]
};

// G_i(s1, s2) = s1^T G_i s2 for both players.
PayoffProfile ExpectedPayoff(const MatrixGame& game, const MixedStrategy& s1,
                             const MixedStrategy& s2);

// Expected payoff to `seat` playing `own` against a pure partner action.
double SeatExpectedPayoff(const MatrixGame& game, Seat seat,
                          const MixedStrategy& own, Action partner);

// Mean realized payoff per player over a non-empty history.
PayoffProfile EmpiricalPayoff(HistoryView history, const MatrixGame& game);

// A complete record of one match: realized actions plus the mixed strategies
// each seat used at each stage. Agents never see the partner's strategies;
// they are kept here for post-hoc analysis only.
struct MatchTrace {
  TypeId type_id;
  History history;
  std::vector<MixedStrategy> strategies_1;
  std::vector<MixedStrategy> strategies_2;
  uint64_t seed = 0;
  std::optional<int> switch_stage_1;
  std::optional<int> switch_stage_2;

  int length() const { return static_cast<int>(history.size()); }
  const std::vector<MixedStrategy>& strategies(Seat seat) const {
    return seat == Seat::kPlayer1 ? strategies_1 : strategies_2;
  }
  std::optional<int> switch_stage(Seat seat) const {
    return seat == Seat::kPlayer1 ? switch_stage_1 : switch_stage_2;
  }

  // Throws InvalidInputError if strategies are misaligned with the history,
  // have the wrong dimension, or give a realized action zero probability.
  void Validate(const MatrixGame& game) const;

  friend bool operator==(const MatchTrace&, const MatchTrace&) = default;
};

}  // namespace si_bench

#endif  // SI_BENCH_GAME_H_
