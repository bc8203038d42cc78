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

#ifndef SI_BENCH_RNG_H_
#define SI_BENCH_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

#include "si_bench/game.h"

namespace si_bench {

// Seeded generator. std::mt19937_64 output is fixed by the standard, and the
// double conversion below does not go through a library distribution, so
// draws are identical on every conforming platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double UniformDouble() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

// Draws an action by inverse CDF. Only actions with strictly positive
// probability can be returned.
Action SampleAction(const MixedStrategy& strategy, Rng& rng);

// splitmix64 finalizer.
uint64_t MixBits(uint64_t x);

// Per-trial seed from (master seed, trial index, pairing id):
//   MixBits(MixBits(MixBits(master) ^ trial) ^ pairing).
// Depends only on its arguments, never on execution order.
uint64_t DeriveSeed(uint64_t master_seed, uint64_t trial_index,
                    uint64_t pairing_id);

// 64-bit FNV-1a of a byte string; used for pairing ids and config hashes.
uint64_t Fnv1a64(std::string_view bytes);

}  // namespace si_bench

#endif  // SI_BENCH_RNG_H_
