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

#include "si_bench/regret.h"

#include <algorithm>
#include <cmath>

#include "si_bench/errors.h"
#include "si_bench/format.h"

namespace si_bench {

using nlohmann::json;

CumulativePayoffTable::CumulativePayoffTable(int num_actions,
                                             bool record_fp_path)
    : record_fp_path_(record_fp_path), per_action_(num_actions, 0.0) {}

double CumulativePayoffTable::BestFixed() const {
  return *std::max_element(per_action_.begin(), per_action_.end());
}

MixedStrategy CumulativePayoffTable::FictitiousPlayStrategy(double tol) const {
  const double best = BestFixed();
  std::vector<bool> optimal(per_action_.size());
  for (size_t a = 0; a < per_action_.size(); ++a) {
    optimal[a] = per_action_[a] >= best - tol;
  }
  return MixedStrategy::UniformOver(optimal);
}

double CumulativePayoffTable::FictitiousPlayPayoff(
    std::span<const double> payoffs) const {
  // Same summation order as SeatExpectedPayoff() on the strategy returned by
  // FictitiousPlayStrategy(), so the two agree bit for bit.
  const double best = BestFixed();
  const int n = static_cast<int>(per_action_.size());
  int count = 0;
  for (int a = 0; a < n; ++a) {
    if (per_action_[a] >= best - kFictitiousPlayTieTolerance) ++count;
  }
  const double p = 1.0 / static_cast<double>(count);
  double total = 0.0;
  for (int a = 0; a < n; ++a) {
    total += (per_action_[a] >= best - kFictitiousPlayTieTolerance ? p : 0.0) *
             payoffs[a];
  }
  return total;
}

void CumulativePayoffTable::Update(const MatrixGame& game, Seat seat,
                                   JointAction joint,
                                   const MixedStrategy* own_strategy) {
  const Action partner = joint.PartnerOf(seat);
  const auto payoffs = game.SeatPayoffs(seat, partner);
  if (record_fp_path_) fp_path_.push_back(FictitiousPlayStrategy());
  fp_counterfactual_ += FictitiousPlayPayoff(payoffs);
  realized_ += payoffs[joint.Of(seat)];
  if (own_strategy != nullptr) {
    expected_realized_ += SeatExpectedPayoff(game, seat, *own_strategy, partner);
  }
  for (size_t a = 0; a < per_action_.size(); ++a) per_action_[a] += payoffs[a];
  ++stages_;
}

double ExternalRegret(HistoryView history, const MatrixGame& game, Seat seat) {
  CumulativePayoffTable table(game.num_actions());
  for (const JointAction& joint : history) table.Update(game, seat, joint);
  return table.ExternalRegret();
}

MixedStrategy FictitiousPlayStrategy(HistoryView history,
                                     const MatrixGame& game, Seat seat,
                                     double tol) {
  CumulativePayoffTable table(game.num_actions());
  for (const JointAction& joint : history) table.Update(game, seat, joint);
  return table.FictitiousPlayStrategy(tol);
}

double StochasticRegret(HistoryView history, const MatrixGame& game,
                        Seat seat) {
  CumulativePayoffTable table(game.num_actions());
  for (const JointAction& joint : history) table.Update(game, seat, joint);
  return table.StochasticRegret();
}

namespace {

const std::vector<MixedStrategy>& RequireStrategies(const MatchTrace& trace,
                                                    Seat seat) {
  const auto& strategies = trace.strategies(seat);
  if (strategies.size() != trace.history.size()) {
    throw InvalidInputError("trace has no strategy record for player " +
                            std::to_string(SeatNumber(seat)));
  }
  return strategies;
}

CumulativePayoffTable ExpectedTable(const MatchTrace& trace,
                                    const MatrixGame& game, Seat seat) {
  const auto& strategies = RequireStrategies(trace, seat);
  CumulativePayoffTable table(game.num_actions());
  for (size_t t = 0; t < trace.history.size(); ++t) {
    table.Update(game, seat, trace.history[t], &strategies[t]);
  }
  return table;
}

}  // namespace

double ExpectedExternalRegret(const MatchTrace& trace, const MatrixGame& game,
                              Seat seat) {
  return ExpectedTable(trace, game, seat).ExpectedExternalRegret();
}

double ExpectedStochasticRegret(const MatchTrace& trace,
                                const MatrixGame& game, Seat seat) {
  return ExpectedTable(trace, game, seat).ExpectedStochasticRegret();
}

RegretReport ComputeRegretReport(const MatchTrace& trace,
                                 const MatrixGame& game, Seat seat) {
  const auto& strategies = RequireStrategies(trace, seat);
  CumulativePayoffTable table(game.num_actions());
  RegretReport report;
  report.seat = seat;
  for (size_t t = 0; t < trace.history.size(); ++t) {
    table.Update(game, seat, trace.history[t], &strategies[t]);
    report.max_prefix_external =
        std::max(report.max_prefix_external, table.ExternalRegret());
    report.max_prefix_stochastic =
        std::max(report.max_prefix_stochastic, table.StochasticRegret());
    report.max_prefix_expected_external = std::max(
        report.max_prefix_expected_external, table.ExpectedExternalRegret());
    report.max_prefix_expected_stochastic =
        std::max(report.max_prefix_expected_stochastic,
                 table.ExpectedStochasticRegret());
  }
  report.external = table.ExternalRegret();
  report.stochastic = table.StochasticRegret();
  report.expected_external = table.ExpectedExternalRegret();
  report.expected_stochastic = table.ExpectedStochasticRegret();
  return report;
}

json RegretReportToJson(const std::string& trace_id,
                        const RegretReport& report) {
  return json{{"trace_id", trace_id},
              {"player", SeatNumber(report.seat)},
              {"external", report.external},
              {"stochastic", report.stochastic},
              {"expected_external", report.expected_external},
              {"expected_stochastic", report.expected_stochastic},
              {"max_prefix_external", report.max_prefix_external},
              {"max_prefix_stochastic", report.max_prefix_stochastic},
              {"max_prefix_expected_external",
               report.max_prefix_expected_external},
              {"max_prefix_expected_stochastic",
               report.max_prefix_expected_stochastic}};
}

std::string RegretCsvHeader() {
  return "trace_id,player,external,stochastic,expected_external,"
         "expected_stochastic,max_prefix_expected_external";
}

std::string RegretCsvRow(const std::string& trace_id,
                         const RegretReport& report) {
  return trace_id + "," + std::to_string(SeatNumber(report.seat)) + "," +
         FormatDouble(report.external) + "," + FormatDouble(report.stochastic) +
         "," + FormatDouble(report.expected_external) + "," +
         FormatDouble(report.expected_stochastic) + "," +
         FormatDouble(report.max_prefix_expected_external);
}

namespace {

void CheckDomain(int horizon, double delta) {
  if (horizon < 1) {
    throw InvalidInputError("horizon must be >= 1, got " +
                            std::to_string(horizon));
  }
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw InvalidInputError("delta must lie in (0, 1], got " +
                            FormatDouble(delta));
  }
}

}  // namespace

double AzumaGap(int horizon, double delta) {
  CheckDomain(horizon, delta);
  return std::sqrt(0.5 * horizon * std::log(1.0 / delta));
}

NashPlayBounds NashPlayRegretBounds(int horizon, double delta) {
  CheckDomain(horizon, delta);
  const double t = static_cast<double>(horizon);
  return {std::sqrt(2.0 * t * std::log(2.0 / delta)),
          2.0 * std::sqrt(2.0 * t * std::log(4.0 / delta))};
}

bool StochasticWithinExternal(HistoryView history, const MatrixGame& game) {
  for (Seat seat : {Seat::kPlayer1, Seat::kPlayer2}) {
    CumulativePayoffTable table(game.num_actions());
    for (const JointAction& joint : history) table.Update(game, seat, joint);
    if (table.StochasticRegret() > table.ExternalRegret() + 1e-9) return false;
  }
  return true;
}

}  // namespace si_bench
