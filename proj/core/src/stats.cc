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

#include "si_bench/stats.h"

#include <string>

#include <boost/math/distributions/beta.hpp>

#include "si_bench/errors.h"

namespace si_bench {

namespace {

void Check(int successes, int trials, double confidence) {
  if (trials < 0 || successes < 0 || successes > trials) {
    throw InvalidInputError("invalid binomial counts " +
                            std::to_string(successes) + "/" +
                            std::to_string(trials));
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw InvalidInputError("confidence must lie in (0, 1)");
  }
}

}  // namespace

double ClopperPearsonLower(int successes, int trials, double confidence) {
  Check(successes, trials, confidence);
  if (successes == 0) return 0.0;
  const boost::math::beta_distribution<double> beta(successes,
                                                    trials - successes + 1);
  return boost::math::quantile(beta, 1.0 - confidence);
}

double ClopperPearsonUpper(int successes, int trials, double confidence) {
  Check(successes, trials, confidence);
  if (successes == trials) return 1.0;
  const boost::math::beta_distribution<double> beta(successes + 1,
                                                    trials - successes);
  return boost::math::quantile(beta, confidence);
}

ProportionInterval ClopperPearson(int successes, int trials,
                                  double confidence) {
  Check(successes, trials, confidence);
  const double one_sided = 1.0 - (1.0 - confidence) / 2.0;
  return {ClopperPearsonLower(successes, trials, one_sided),
          ClopperPearsonUpper(successes, trials, one_sided)};
}

nlohmann::json RateToJson(const Rate& rate, double confidence) {
  nlohmann::json doc{{"successes", rate.successes},
                     {"trials", rate.trials},
                     {"rate", rate.value()}};
  if (rate.trials > 0) {
    const ProportionInterval ci = rate.Interval(confidence);
    doc["ci_lower"] = ci.lower;
    doc["ci_upper"] = ci.upper;
    doc["ci_confidence"] = confidence;
  }
  return doc;
}

}  // namespace si_bench
