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

#ifndef SI_BENCH_REGRET_H_
#define SI_BENCH_REGRET_H_

// Regret functionals for one seat of a repeated matrix game.
//
// For a history h of length T and seat i, with a_t the realized joint action,
// s_t the seat's mixed strategy and fp_t the fictitious-play recommendation
// computed from the first t-1 stages:
//
//   external            max_a sum_t G(a, a'_t) - G(a_t, a'_t)
//   stochastic                sum_t G(fp_t, a'_t) - G(a_t, a'_t)
//   expected external   max_a sum_t G(a, a'_t) - G(s_t, a'_t)
//   expected stochastic       sum_t G(fp_t, a'_t) - G(s_t, a'_t)
//
// where a'_t is the partner's realized action. Everything is maintained
// incrementally in O(N) per stage.

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "si_bench/game.h"

namespace si_bench {

// Actions whose cumulative payoff is within this of the best count as tied.
inline constexpr double kFictitiousPlayTieTolerance = 1e-9;

class CumulativePayoffTable {
 public:
  explicit CumulativePayoffTable(int num_actions, bool record_fp_path = false);

  // Appends one stage. When `own_strategy` is given, the expected-realized
  // total is updated too; it must be given for every stage or for none.
  void Update(const MatrixGame& game, Seat seat, JointAction joint,
              const MixedStrategy* own_strategy = nullptr);

  // Uniform over the actions with the best cumulative payoff so far.
  MixedStrategy FictitiousPlayStrategy(
      double tol = kFictitiousPlayTieTolerance) const;

  int stages() const { return stages_; }
  const std::vector<double>& per_action() const { return per_action_; }
  double realized() const { return realized_; }
  double fp_counterfactual() const { return fp_counterfactual_; }
  double expected_realized() const { return expected_realized_; }
  const std::vector<MixedStrategy>& fp_path() const { return fp_path_; }
  double BestFixed() const;

  double ExternalRegret() const { return BestFixed() - realized_; }
  double StochasticRegret() const { return fp_counterfactual_ - realized_; }
  double ExpectedExternalRegret() const {
    return BestFixed() - expected_realized_;
  }
  double ExpectedStochasticRegret() const {
    return fp_counterfactual_ - expected_realized_;
  }

 private:
  // Expected payoff of the current recommendation against `payoffs`.
  double FictitiousPlayPayoff(std::span<const double> payoffs) const;

  int stages_ = 0;
  bool record_fp_path_;
  std::vector<double> per_action_;
  double realized_ = 0.0;
  double fp_counterfactual_ = 0.0;
  double expected_realized_ = 0.0;
  std::vector<MixedStrategy> fp_path_;
};

double ExternalRegret(HistoryView history, const MatrixGame& game, Seat seat);

MixedStrategy FictitiousPlayStrategy(
    HistoryView history, const MatrixGame& game, Seat seat,
    double tol = kFictitiousPlayTieTolerance);

double StochasticRegret(HistoryView history, const MatrixGame& game, Seat seat);

// Both throw InvalidInputError when the trace lacks the seat's strategies.
double ExpectedExternalRegret(const MatchTrace& trace, const MatrixGame& game,
                              Seat seat);
double ExpectedStochasticRegret(const MatchTrace& trace,
                                const MatrixGame& game, Seat seat);

struct RegretReport {
  Seat seat = Seat::kPlayer1;
  double external = 0.0;
  double stochastic = 0.0;
  double expected_external = 0.0;
  double expected_stochastic = 0.0;
  // Maxima over prefixes t = 0..T (the empty prefix contributes 0).
  double max_prefix_external = 0.0;
  double max_prefix_stochastic = 0.0;
  double max_prefix_expected_external = 0.0;
  double max_prefix_expected_stochastic = 0.0;
};

// Full report for one seat of a trace whose strategies are recorded.
RegretReport ComputeRegretReport(const MatchTrace& trace,
                                 const MatrixGame& game, Seat seat);

nlohmann::json RegretReportToJson(const std::string& trace_id,
                                  const RegretReport& report);
std::string RegretCsvHeader();
std::string RegretCsvRow(const std::string& trace_id,
                         const RegretReport& report);

// sqrt((T/2) ln(1/delta)): the high-probability gap between realized and
// expected regret. Requires T >= 1 and 0 < delta <= 1.
double AzumaGap(int horizon, double delta);

struct NashPlayBounds {
  double expected_bound;  // sqrt(2T ln(2/delta))
  double realized_bound;  // 2 sqrt(2T ln(4/delta))
};

// Regret bounds that hold with probability 1 - delta, for every prefix, when
// both seats play a fixed Nash profile each stage.
NashPlayBounds NashPlayRegretBounds(int horizon, double delta);

// Stochastic regret never exceeds external regret: checks
// stochastic <= external + 1e-9 for both seats.
bool StochasticWithinExternal(HistoryView history, const MatrixGame& game);

}  // namespace si_bench

#endif  // SI_BENCH_REGRET_H_
