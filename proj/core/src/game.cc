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

#include "si_bench/game.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "si_bench/errors.h"

namespace si_bench {

Seat SeatFromNumber(int number) {
  if (number == 1) return Seat::kPlayer1;
  if (number == 2) return Seat::kPlayer2;
  throw InvalidInputError("player id must be 1 or 2, got " +
                          std::to_string(number));
}

MixedStrategy::MixedStrategy(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) throw InvalidInputError("empty mixed strategy");
  double sum = 0.0;
  for (double& p : probs_) {
    if (!std::isfinite(p) || p < -kSumTolerance) {
      throw InvalidInputError("mixed strategy has a negative or non-finite "
                              "probability: " + std::to_string(p));
    }
    if (p < 0.0) p = 0.0;
    sum += p;
  }
  const double drift = std::abs(sum - 1.0);
  if (drift > kRenormalizeTolerance) {
    throw InvalidInputError("mixed strategy sums to " + std::to_string(sum));
  }
  if (drift > kSumTolerance) {
    for (double& p : probs_) p /= sum;
  }
}

MixedStrategy MixedStrategy::Pure(int num_actions, Action action) {
  if (action < 0 || action >= num_actions) {
    throw InvalidInputError("pure action " + std::to_string(action) +
                            " outside [0, " + std::to_string(num_actions) + ")");
  }
  std::vector<double> probs(num_actions, 0.0);
  probs[action] = 1.0;
  return MixedStrategy(std::move(probs));
}

MixedStrategy MixedStrategy::Uniform(int num_actions) {
  if (num_actions <= 0) throw InvalidInputError("uniform over zero actions");
  return MixedStrategy(std::vector<double>(num_actions, 1.0 / num_actions));
}

MixedStrategy MixedStrategy::UniformOver(const std::vector<bool>& actions) {
  const auto count = std::count(actions.begin(), actions.end(), true);
  if (count == 0) throw InvalidInputError("uniform over an empty action set");
  std::vector<double> probs(actions.size(), 0.0);
  const double p = 1.0 / static_cast<double>(count);
  for (size_t a = 0; a < actions.size(); ++a) {
    if (actions[a]) probs[a] = p;
  }
  return MixedStrategy(std::move(probs));
}

std::vector<Action> MixedStrategy::Support(double tol) const {
  std::vector<Action> support;
  for (int a = 0; a < size(); ++a) {
    if (probs_[a] > tol) support.push_back(a);
  }
  return support;
}

bool MixedStrategy::IsPure() const {
  return std::count_if(probs_.begin(), probs_.end(),
                       [](double p) { return p > 0.0; }) == 1;
}

double MixedStrategy::MaxAbsDifference(const MixedStrategy& other) const {
  if (other.size() != size()) {
    throw InvalidInputError("comparing strategies of different dimension");
  }
  double diff = 0.0;
  for (int a = 0; a < size(); ++a) {
    diff = std::max(diff, std::abs(probs_[a] - other.probs_[a]));
  }
  return diff;
}

GameValidation ValidateGame(const Matrix& payoff_1, const Matrix& payoff_2) {
  GameValidation report;
  report.rows_1 = static_cast<int>(payoff_1.size());
  report.rows_2 = static_cast<int>(payoff_2.size());
  report.shape_ok = true;
  report.finite = true;
  report.normalized = true;

  auto check_square = [&](const Matrix& m, const char* name) {
    for (size_t r = 0; r < m.size(); ++r) {
      if (m[r].size() != m.size()) {
        report.shape_ok = false;
        report.problems.push_back(std::string(name) + " row " +
                                  std::to_string(r) + " has " +
                                  std::to_string(m[r].size()) +
                                  " entries, expected " +
                                  std::to_string(m.size()));
      }
    }
  };
  check_square(payoff_1, "payoff_1");
  check_square(payoff_2, "payoff_2");
  if (payoff_1.size() != payoff_2.size()) {
    report.shape_ok = false;
    report.problems.push_back("payoff matrices have different dimensions");
  }
  if (payoff_1.size() < 2) {
    report.shape_ok = false;
    report.problems.push_back("games need at least 2 actions");
  }

  for (const Matrix* m : {&payoff_1, &payoff_2}) {
    for (const auto& row : *m) {
      for (double v : row) {
        if (!std::isfinite(v)) {
          report.finite = false;
          report.normalized = false;
        } else if (v < 0.0 || v > 1.0) {
          report.normalized = false;
        }
      }
    }
  }
  if (!report.finite) report.problems.push_back("non-finite payoff entry");
  return report;
}

MatrixGame::MatrixGame(const Matrix& payoff_1, const Matrix& payoff_2) {
  const GameValidation report = ValidateGame(payoff_1, payoff_2);
  if (!report.ok()) {
    std::string msg = "invalid game:";
    for (const auto& p : report.problems) msg += " " + p + ";";
    throw InvalidInputError(msg);
  }
  n_ = report.rows_1;
  normalized_ = report.normalized;
  const Matrix* src[2] = {&payoff_1, &payoff_2};
  for (int s = 0; s < 2; ++s) {
    payoff_[s].resize(n_ * n_);
    by_partner_[s].resize(n_ * n_);
    for (int a1 = 0; a1 < n_; ++a1) {
      for (int a2 = 0; a2 < n_; ++a2) {
        const double v = (*src[s])[a1][a2];
        payoff_[s][a1 * n_ + a2] = v;
        // Seat-relative view: own action first for the seat in question.
        if (s == 0) {
          by_partner_[s][a2 * n_ + a1] = v;
        } else {
          by_partner_[s][a1 * n_ + a2] = v;
        }
      }
    }
  }
}

Matrix MatrixGame::PayoffMatrix(Seat seat) const {
  Matrix m(n_, std::vector<double>(n_));
  for (int a1 = 0; a1 < n_; ++a1) {
    for (int a2 = 0; a2 < n_; ++a2) {
      m[a1][a2] = payoff_[SeatIndex(seat)][a1 * n_ + a2];
    }
  }
  return m;
}

PayoffProfile ExpectedPayoff(const MatrixGame& game, const MixedStrategy& s1,
                             const MixedStrategy& s2) {
  const int n = game.num_actions();
  if (s1.size() != n || s2.size() != n) {
    throw InvalidInputError("strategy dimension does not match the game");
  }
  PayoffProfile out;
  for (int a1 = 0; a1 < n; ++a1) {
    if (s1[a1] == 0.0) continue;
    double row_1 = 0.0;
    double row_2 = 0.0;
    for (int a2 = 0; a2 < n; ++a2) {
      row_1 += game.payoff_1(a1, a2) * s2[a2];
      row_2 += game.payoff_2(a1, a2) * s2[a2];
    }
    out.p1 += s1[a1] * row_1;
    out.p2 += s1[a1] * row_2;
  }
  return out;
}

double SeatExpectedPayoff(const MatrixGame& game, Seat seat,
                          const MixedStrategy& own, Action partner) {
  const auto payoffs = game.SeatPayoffs(seat, partner);
  double total = 0.0;
  for (int a = 0; a < own.size(); ++a) total += own[a] * payoffs[a];
  return total;
}

PayoffProfile EmpiricalPayoff(HistoryView history, const MatrixGame& game) {
  if (history.empty()) {
    throw InvalidInputError("empirical payoff of an empty history");
  }
  PayoffProfile sum;
  for (const JointAction& joint : history) {
    sum.p1 += game.payoff_1(joint.a1, joint.a2);
    sum.p2 += game.payoff_2(joint.a1, joint.a2);
  }
  const double len = static_cast<double>(history.size());
  return {sum.p1 / len, sum.p2 / len};
}

void MatchTrace::Validate(const MatrixGame& game) const {
  const size_t len = history.size();
  if (strategies_1.size() != len || strategies_2.size() != len) {
    throw InvalidInputError("trace strategy records do not align with history");
  }
  const int n = game.num_actions();
  for (size_t t = 0; t < len; ++t) {
    const JointAction& joint = history[t];
    if (joint.a1 < 0 || joint.a1 >= n || joint.a2 < 0 || joint.a2 >= n) {
      throw InvalidInputError("action out of range at stage " +
                              std::to_string(t + 1));
    }
    if (strategies_1[t].size() != n || strategies_2[t].size() != n) {
      throw InvalidInputError("strategy dimension mismatch at stage " +
                              std::to_string(t + 1));
    }
    if (!(strategies_1[t][joint.a1] > 0.0) ||
        !(strategies_2[t][joint.a2] > 0.0)) {
      throw InvalidInputError("realized action has zero probability at stage " +
                              std::to_string(t + 1));
    }
  }
  for (const auto& stage : {switch_stage_1, switch_stage_2}) {
    if (stage && (*stage < 1 || *stage > static_cast<int>(len))) {
      throw InvalidInputError("switch stage outside the match");
    }
  }
}

}  // namespace si_bench
