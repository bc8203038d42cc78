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

#ifndef SI_BENCH_STATS_H_
#define SI_BENCH_STATS_H_

// Binomial confidence bounds for Monte-Carlo rates.

#include <nlohmann/json.hpp>

namespace si_bench {

struct ProportionInterval {
  double lower = 0.0;
  double upper = 1.0;
};

// Exact (Clopper-Pearson) two-sided interval at the given confidence.
ProportionInterval ClopperPearson(int successes, int trials,
                                  double confidence = 0.95);

// One-sided exact bounds: P(p >= lower) >= confidence, P(p <= upper) >= confidence.
double ClopperPearsonLower(int successes, int trials, double confidence);
double ClopperPearsonUpper(int successes, int trials, double confidence);

struct Rate {
  int successes = 0;
  int trials = 0;
  double value() const {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / trials;
  }
  ProportionInterval Interval(double confidence = 0.95) const {
    return ClopperPearson(successes, trials, confidence);
  }
};

nlohmann::json RateToJson(const Rate& rate, double confidence = 0.95);

}  // namespace si_bench

#endif  // SI_BENCH_STATS_H_
