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

#include <cmath>

#include <gtest/gtest.h>

#include "si_bench/stats.h"

namespace si_bench {
namespace {

// P[Binomial(n, p) >= s], summed directly in log space.
double UpperTail(int s, int n, double p) {
  double total = 0.0;
  for (int k = s; k <= n; ++k) {
    const double log_term = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                            std::lgamma(n - k + 1.0) + k * std::log(p) +
                            (n - k) * std::log1p(-p);
    total += std::exp(log_term);
  }
  return total;
}

// Lower one-sided bound: the p with P[X >= s | p] = 1 - confidence.
double OracleLower(int s, int n, double confidence) {
  if (s == 0) return 0.0;
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (UpperTail(s, n, mid) < 1.0 - confidence ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TEST(ClopperPearsonTest, MatchesBinomialTailOracle) {
  for (int n : {1, 7, 20, 100, 500}) {
    for (int s = 0; s <= n; s += std::max(1, n / 9)) {
      for (double c : {0.9, 0.95, 0.99}) {
        EXPECT_NEAR(ClopperPearsonLower(s, n, c), OracleLower(s, n, c), 1e-9)
            << s << "/" << n << " at " << c;
        EXPECT_NEAR(ClopperPearsonUpper(s, n, c), 1.0 - OracleLower(n - s, n, c), 1e-9);
      }
    }
  }
}

TEST(ClopperPearsonTest, EdgesAndTwoSided) {
  EXPECT_EQ(ClopperPearsonLower(0, 10, 0.99), 0.0);
  EXPECT_EQ(ClopperPearsonUpper(10, 10, 0.99), 1.0);
  // All successes: lower bound is (1 - c)^(1/n).
  EXPECT_NEAR(ClopperPearsonLower(500, 500, 0.99), std::pow(0.01, 1.0 / 500), 1e-12);
  const ProportionInterval i = ClopperPearson(30, 100, 0.95);
  EXPECT_NEAR(i.lower, ClopperPearsonLower(30, 100, 0.975), 1e-12);
  EXPECT_NEAR(i.upper, ClopperPearsonUpper(30, 100, 0.975), 1e-12);
  EXPECT_LT(i.lower, 0.3);
  EXPECT_GT(i.upper, 0.3);
}

TEST(RateTest, ValueAndJson) {
  const Rate rate{45, 50};
  EXPECT_DOUBLE_EQ(rate.value(), 0.9);
  EXPECT_EQ(Rate{}.value(), 0.0);
  const nlohmann::json doc = RateToJson(rate);
  EXPECT_EQ(doc.at("successes"), 45);
  EXPECT_EQ(doc.at("trials"), 50);
}

}  // namespace
}  // namespace si_bench
