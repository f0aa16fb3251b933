// Copyright 2026 The robqubo Authors
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
#include <vector>

#include "benchmark/benchmark.h"
#include "robqubo/design.h"
#include "robqubo/preprocess.h"
#include "robqubo/qubo.h"
#include "robqubo/solver.h"

namespace robqubo {
namespace {

QuboInstance Random(int n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<int> value(-100, 100);
  std::vector<Coefficient> entries;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (keep(rng)) entries.push_back({i, j, static_cast<double>(value(rng))});
    }
  }
  return QuboInstance::FromEntries(n, std::move(entries));
}

void BM_Enumerate(benchmark::State& state) {
  QuboInstance q = Random(static_cast<int>(state.range(0)), 0.5, 1);
  SolverConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(Enumerate(q, config));
}
BENCHMARK(BM_Enumerate)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_BranchAndBound(benchmark::State& state) {
  QuboInstance q = Random(static_cast<int>(state.range(0)), 0.1, 2);
  SolverConfig config;
  config.time_budget = 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(BranchAndBound(q, config));
}
BENCHMARK(BM_BranchAndBound)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_Tabu(benchmark::State& state) {
  QuboInstance q = Random(static_cast<int>(state.range(0)), 0.1, 3);
  SolverConfig config;
  config.mode = SolveMode::kHeuristic;
  for (auto _ : state) benchmark::DoNotOptimize(SolveHeuristic(q, config));
}
BENCHMARK(BM_Tabu)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_FixVariables(benchmark::State& state) {
  QuboInstance q = Random(static_cast<int>(state.range(0)), 0.05, 4);
  for (auto _ : state) benchmark::DoNotOptimize(FixVariables(q));
}
BENCHMARK(BM_FixVariables)->Arg(500);

void BM_BuildDesign(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(BuildDesign(RunCount(d), d));
}
BENCHMARK(BM_BuildDesign)->Arg(130)->Arg(255);

}  // namespace
}  // namespace robqubo

BENCHMARK_MAIN();
