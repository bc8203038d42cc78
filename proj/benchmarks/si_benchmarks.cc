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

#include <random>

#include <benchmark/benchmark.h>

#include "si_bench/agents.h"
#include "si_bench/equilibria.h"
#include "si_bench/harness.h"
#include "si_bench/regret.h"

namespace si_bench {
namespace {

Matrix RandomMatrix(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix m(n, std::vector<double>(n));
  for (auto& row : m) {
    for (double& x : row) x = unit(rng);
  }
  return m;
}

void BM_CumulativePayoffTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  const MatrixGame game(RandomMatrix(rng, n), RandomMatrix(rng, n));
  History history;
  for (int t = 0; t < 10000; ++t) {
    history.push_back({static_cast<int>(rng() % n), static_cast<int>(rng() % n)});
  }
  for (auto _ : state) {
    CumulativePayoffTable table(n);
    for (const JointAction& joint : history) table.Update(game, Seat::kPlayer1, joint);
    benchmark::DoNotOptimize(table.StochasticRegret());
  }
  state.SetItemsProcessed(state.iterations() * history.size());
}
BENCHMARK(BM_CumulativePayoffTable)->Arg(2)->Arg(4)->Arg(8);

void BM_EnumerateNash(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  std::vector<MatrixGame> games;
  for (int k = 0; k < 16; ++k) games.emplace_back(RandomMatrix(rng, n), RandomMatrix(rng, n));
  size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(EnumerateNash(games[k++ % games.size()]));
  }
}
BENCHMARK(BM_EnumerateNash)->DenseRange(2, 5);

void BM_RunMatch(benchmark::State& state) {
  GameCatalog catalog;
  catalog.Add("mp", MatrixGame({{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}));
  const auto conventions = std::make_shared<const ConventionMap>(SelectConventions(catalog));
  const int horizon = static_cast<int>(state.range(0));
  const AgentSpec agent = ResolveAgentSpec(StochasticFallbackAgent(conventions), horizon,
                                           0.05, 2);
  uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunMatch({"mp", agent, BestResponseExploiter(), horizon,
                                       seed++},
                                      catalog));
  }
  state.SetItemsProcessed(state.iterations() * horizon);
}
BENCHMARK(BM_RunMatch)->Arg(1000)->Arg(10000);

}  // namespace
}  // namespace si_bench

BENCHMARK_MAIN();
