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

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "si_bench/errors.h"
#include "si_bench/regret.h"
#include "test_oracles.h"
#include "test_util.h"

namespace si_bench {
namespace {

using testing::Identity;

constexpr Seat kP1 = Seat::kPlayer1;
constexpr Seat kP2 = Seat::kPlayer2;

TEST(ExternalRegretTest, Examples) {
  const MatrixGame game = Identity();
  EXPECT_EQ(ExternalRegret(History{}, game, kP1), 0.0);
  const History h = {{0, 1}, {0, 1}};
  EXPECT_EQ(ExternalRegret(h, game, kP1), 2.0);
  const History best = {{1, 1}, {1, 1}, {1, 0}};
  EXPECT_EQ(ExternalRegret(best, game, kP1), 0.0);
}

TEST(FictitiousPlayTest, Examples) {
  const MatrixGame game(std::vector<std::vector<double>>(3, {0, 0, 0}),
                        std::vector<std::vector<double>>(3, {0, 0, 0}));
  EXPECT_EQ(FictitiousPlayStrategy(History{}, game, kP1), MixedStrategy::Uniform(3));
  EXPECT_EQ(FictitiousPlayStrategy(History{{0, 1}}, Identity(), kP1),
            MixedStrategy::Pure(2, 1));
  EXPECT_EQ(FictitiousPlayStrategy(History{{0, 1}, {0, 0}}, Identity(), kP1),
            MixedStrategy::Uniform(2));
}

TEST(StochasticRegretTest, TwoStageExample) {
  const History h = {{0, 1}, {0, 1}};
  EXPECT_EQ(StochasticRegret(History{}, Identity(), kP1), 0.0);
  EXPECT_DOUBLE_EQ(StochasticRegret(h, Identity(), kP1), 1.5);
  EXPECT_TRUE(StochasticWithinExternal(h, Identity()));
  EXPECT_TRUE(StochasticWithinExternal(History{}, Identity()));
}

TEST(RegretTest, MatchesOracleOnRandomHistories) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 3;
    const auto g1 = oracle::RandomMatrix(rng, n);
    const auto g2 = oracle::RandomMatrix(rng, n);
    const auto h = oracle::RandomHistory(rng, n, trial % 40);
    const MatrixGame game(g1, g2);
    const History history = testing::ToHistory(h);
    for (int who = 0; who < 2; ++who) {
      const Seat seat = SeatFromNumber(who + 1);
      EXPECT_NEAR(ExternalRegret(history, game, seat),
                  oracle::External(g1, g2, h, who), 1e-9);
      EXPECT_NEAR(StochasticRegret(history, game, seat),
                  oracle::Stochastic(g1, g2, h, who), 1e-9);
    }
  }
}

TEST(RegretTest, IncrementalTableMatchesScratchAtEveryPrefix) {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 3;
    const auto g1 = oracle::RandomMatrix(rng, n);
    const auto g2 = oracle::RandomMatrix(rng, n);
    const auto h = oracle::RandomHistory(rng, n, 30);
    const MatrixGame game(g1, g2);
    CumulativePayoffTable table(n, /*record_fp_path=*/true);
    for (size_t t = 0; t < h.size(); ++t) {
      EXPECT_LE(oracle::MaxAbs(table.FictitiousPlayStrategy().probs(),
                               oracle::FictitiousPlay(g1, g2, h, t, 0)),
                1e-12);
      table.Update(game, kP1, {h[t].first, h[t].second});
      const oracle::Hist prefix(h.begin(), h.begin() + t + 1);
      EXPECT_NEAR(table.ExternalRegret(), oracle::External(g1, g2, prefix, 0), 1e-9);
      EXPECT_NEAR(table.StochasticRegret(), oracle::Stochastic(g1, g2, prefix, 0), 1e-9);
    }
    EXPECT_EQ(table.fp_path().size(), h.size());
  }
}

TEST(RegretTest, ExternalRegretIsPermutationInvariant) {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 3;
    const MatrixGame game(oracle::RandomMatrix(rng, n), oracle::RandomMatrix(rng, n));
    History h = testing::ToHistory(oracle::RandomHistory(rng, n, 25));
    const double before = ExternalRegret(h, game, kP2);
    std::shuffle(h.begin(), h.end(), rng);
    EXPECT_NEAR(ExternalRegret(h, game, kP2), before, 1e-12);
  }
}

MatchTrace MakeTrace(const History& h, std::vector<MixedStrategy> s1,
                     std::vector<MixedStrategy> s2) {
  MatchTrace trace;
  trace.history = h;
  trace.strategies_1 = std::move(s1);
  trace.strategies_2 = std::move(s2);
  return trace;
}

TEST(ExpectedRegretTest, Examples) {
  const MatrixGame game = Identity();
  const MatchTrace single =
      MakeTrace({{0, 1}}, {MixedStrategy::Uniform(2)}, {MixedStrategy::Pure(2, 1)});
  EXPECT_DOUBLE_EQ(ExpectedExternalRegret(single, game, kP1), 0.5);
  const MatchTrace pure =
      MakeTrace({{0, 1}}, {MixedStrategy::Pure(2, 0)}, {MixedStrategy::Pure(2, 1)});
  EXPECT_DOUBLE_EQ(ExpectedStochasticRegret(pure, game, kP1), 0.5);

  const History nash(20, JointAction{1, 1});
  const MatchTrace at_nash =
      MakeTrace(nash, std::vector<MixedStrategy>(20, MixedStrategy::Pure(2, 1)),
                std::vector<MixedStrategy>(20, MixedStrategy::Pure(2, 1)));
  EXPECT_EQ(ExpectedExternalRegret(at_nash, game, kP1), 0.0);
  EXPECT_EQ(ExpectedExternalRegret(at_nash, game, kP2), 0.0);

  MatchTrace missing;
  missing.history = {{0, 0}};
  EXPECT_THROW(ExpectedExternalRegret(missing, game, kP1), InvalidInputError);
  EXPECT_THROW(ExpectedStochasticRegret(missing, game, kP1), InvalidInputError);
}

TEST(ExpectedRegretTest, PureRecordsReduceToRealized) {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 3;
    const MatrixGame game(oracle::RandomMatrix(rng, n), oracle::RandomMatrix(rng, n));
    const History h = testing::ToHistory(oracle::RandomHistory(rng, n, 30));
    std::vector<MixedStrategy> s1, s2;
    for (const JointAction& j : h) {
      s1.push_back(MixedStrategy::Pure(n, j.a1));
      s2.push_back(MixedStrategy::Pure(n, j.a2));
    }
    const MatchTrace trace = MakeTrace(h, s1, s2);
    for (Seat seat : {kP1, kP2}) {
      EXPECT_NEAR(ExpectedExternalRegret(trace, game, seat),
                  ExternalRegret(h, game, seat), 1e-12);
      EXPECT_NEAR(ExpectedStochasticRegret(trace, game, seat),
                  StochasticRegret(h, game, seat), 1e-12);
    }
  }
}

TEST(ExpectedRegretTest, FictitiousPlayRecordHasZeroExpectedStochasticRegret) {
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 3;
    const MatrixGame game(oracle::RandomMatrix(rng, n), oracle::RandomMatrix(rng, n));
    const History h = testing::ToHistory(oracle::RandomHistory(rng, n, 40));
    std::vector<MixedStrategy> fp, other;
    for (size_t t = 0; t < h.size(); ++t) {
      fp.push_back(FictitiousPlayStrategy(HistoryView(h).first(t), game, kP1));
      other.push_back(MixedStrategy::Pure(n, h[t].a2));
    }
    // Realized actions must be in the support; force them to be.
    History consistent = h;
    for (size_t t = 0; t < h.size(); ++t) consistent[t].a1 = fp[t].Support()[0];
    // The FP path depends only on partner actions, which are unchanged.
    const MatchTrace trace = MakeTrace(consistent, fp, other);
    EXPECT_NEAR(ExpectedStochasticRegret(trace, game, kP1), 0.0, 1e-12);
  }
}

TEST(ExpectedRegretTest, ExpectedStochasticWithinExpectedExternal) {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 2 + trial % 3;
    const auto g1 = oracle::RandomMatrix(rng, n);
    const auto g2 = oracle::RandomMatrix(rng, n);
    const MatrixGame game(g1, g2);
    const History h = testing::ToHistory(oracle::RandomHistory(rng, n, 1 + trial % 20));
    std::vector<MixedStrategy> s1, s2;
    for (const JointAction& j : h) {
      std::vector<double> p(n), q(n);
      double tp = 0, tq = 0;
      for (int a = 0; a < n; ++a) {
        tp += (p[a] = unit(rng) + (a == j.a1));
        tq += (q[a] = unit(rng) + (a == j.a2));
      }
      for (int a = 0; a < n; ++a) {
        p[a] /= tp;
        q[a] /= tq;
      }
      s1.emplace_back(p);
      s2.emplace_back(q);
    }
    const MatchTrace trace = MakeTrace(h, s1, s2);
    for (Seat seat : {kP1, kP2}) {
      ASSERT_LE(ExpectedStochasticRegret(trace, game, seat),
                ExpectedExternalRegret(trace, game, seat) + 1e-9);
    }
  }
}

TEST(RegretReportTest, PrefixMaximaMatchOracle) {
  std::mt19937_64 rng(707);
  const auto g1 = oracle::RandomMatrix(rng, 3);
  const auto g2 = oracle::RandomMatrix(rng, 3);
  const MatrixGame game(g1, g2);
  const auto h = oracle::RandomHistory(rng, 3, 30);
  std::vector<MixedStrategy> s1, s2;
  std::vector<std::vector<double>> own;
  for (const auto& [a1, a2] : h) {
    s1.push_back(MixedStrategy::Pure(3, a1));
    s2.push_back(MixedStrategy::Uniform(3));
    own.push_back(s2.back().probs());
  }
  const MatchTrace trace = MakeTrace(testing::ToHistory(h), s1, s2);
  const RegretReport report = ComputeRegretReport(trace, game, kP2);
  double max_prefix = 0.0;
  for (size_t t = 1; t <= h.size(); ++t) {
    const oracle::Hist prefix(h.begin(), h.begin() + t);
    const std::vector<std::vector<double>> own_prefix(own.begin(), own.begin() + t);
    max_prefix = std::max(max_prefix,
                          oracle::ExpectedExternal(g1, g2, prefix, own_prefix, 1));
  }
  EXPECT_NEAR(report.max_prefix_expected_external, max_prefix, 1e-9);
  EXPECT_NEAR(report.expected_external, oracle::ExpectedExternal(g1, g2, h, own, 1), 1e-9);
  EXPECT_NEAR(report.external, oracle::External(g1, g2, h, 1), 1e-9);
  const std::string row = RegretCsvRow("x", report);
  EXPECT_EQ(row.substr(0, 4), "x,2,");
}

TEST(BoundsTest, AzumaGap) {
  EXPECT_NEAR(AzumaGap(1000, 0.05), std::sqrt(500 * std::log(20.0)), 1e-12);
  EXPECT_NEAR(AzumaGap(1000, 0.05), 38.70, 0.01);
  EXPECT_EQ(AzumaGap(1000, 1.0), 0.0);
  EXPECT_NEAR(AzumaGap(2, std::exp(-1.0)), 1.0, 1e-12);
  EXPECT_LT(AzumaGap(100, 0.05), AzumaGap(200, 0.05));
  EXPECT_GT(AzumaGap(100, 0.01), AzumaGap(100, 0.05));
  EXPECT_THROW(AzumaGap(0, 0.05), InvalidInputError);
  EXPECT_THROW(AzumaGap(10, 0.0), InvalidInputError);
  EXPECT_THROW(AzumaGap(10, 1.5), InvalidInputError);
}

TEST(BoundsTest, NashPlayBounds) {
  const NashPlayBounds b = NashPlayRegretBounds(10000, 0.05);
  EXPECT_NEAR(b.expected_bound, std::sqrt(20000 * std::log(40.0)), 1e-9);
  EXPECT_NEAR(b.expected_bound, 271.6, 0.05);
  for (int t : {1, 10, 1000}) {
    for (double d : {0.01, 0.5, 0.999999}) {
      const NashPlayBounds x = NashPlayRegretBounds(t, d);
      EXPECT_GT(x.realized_bound, x.expected_bound);
    }
  }
  EXPECT_NEAR(NashPlayRegretBounds(50, 1.0 - 1e-12).expected_bound,
              std::sqrt(100 * std::log(2.0)), 1e-6);
  EXPECT_THROW(NashPlayRegretBounds(0, 0.5), InvalidInputError);
}

}  // namespace
}  // namespace si_bench
