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

#include "si_bench/rng.h"

namespace si_bench {

Action SampleAction(const MixedStrategy& strategy, Rng& rng) {
  const double u = rng.UniformDouble();
  double cumulative = 0.0;
  Action last_positive = -1;
  for (Action a = 0; a < strategy.size(); ++a) {
    const double p = strategy[a];
    if (p <= 0.0) continue;
    last_positive = a;
    cumulative += p;
    if (u < cumulative) return a;
  }
  // Rounding left the cumulative sum just below u.
  return last_positive;
}

uint64_t MixBits(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t DeriveSeed(uint64_t master_seed, uint64_t trial_index,
                    uint64_t pairing_id) {
  return MixBits(MixBits(MixBits(master_seed) ^ trial_index) ^ pairing_id);
}

uint64_t Fnv1a64(std::string_view bytes) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace si_bench
