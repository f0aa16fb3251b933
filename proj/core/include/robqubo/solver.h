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

#ifndef ROBQUBO_SOLVER_H_
#define ROBQUBO_SOLVER_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>

#include "robqubo/qubo.h"

namespace robqubo {

enum class SolveMode { kAuto, kExact, kHeuristic };
enum class SolveStatus { kProvenOptimal, kHeuristic, kBudgetExhausted };

const char* SolveModeName(SolveMode mode);
const char* SolveStatusName(SolveStatus status);
// Throws InputError for an unknown name.
SolveMode ParseSolveMode(std::string_view name);

struct SolverConfig {
  SolveMode mode = SolveMode::kAuto;
  // Exact solves enumerate all 2^n assignments when n <= enum_threshold.
  int enum_threshold = 22;
  // Wall-clock cutoff in seconds for every search; <= 0 disables it.
  double time_budget = 60.0;
  // Branch-and-bound node cutoff; 0 disables it. Unlike the time budget
  // this cutoff is reproducible across machines and worker counts.
  std::int64_t node_limit = 5'000'000;
  int restarts = 10;
  int tabu_tenure = 10;
  std::uint64_t seed = 20170101;
  // Called whenever the running incumbent improves.
  std::function<void(double)> on_improvement;

  // Throws InputError unless 1 <= enum_threshold <= 40, restarts >= 1,
  // tabu_tenure >= 0 and node_limit >= 0.
  void Validate() const;
};

struct SolveOutcome {
  BinarySolution solution;
  SolveStatus status = SolveStatus::kHeuristic;
  std::int64_t nodes_or_iterations = 0;
  double elapsed = 0.0;  // seconds
};

// evaluate(flip(bits, i)) - evaluate(bits), in O(deg(i)).
double OneFlipGain(const QuboInstance& instance,
                   std::span<const std::uint8_t> bits, int i);

// Visits every assignment in reflected Gray-code order with O(deg) updates
// per step. Among equal optima the first one visited wins.
SolveOutcome Enumerate(const QuboInstance& instance, const SolverConfig& config);

// Fixes variables by diagonal dominance, then runs a depth-first search
// branching on the free variable with the largest |delta| and pruning with
// the positive-sum bound of the free submatrix.
SolveOutcome BranchAndBound(const QuboInstance& instance, const SolverConfig& config);

// Enumeration for n <= enum_threshold, branch-and-bound otherwise.
SolveOutcome SolveExact(const QuboInstance& instance, const SolverConfig& config);

// Multi-start tabu search over 1-flip moves. Deterministic for a given seed
// as long as the time budget does not cut it short.
SolveOutcome SolveHeuristic(const QuboInstance& instance, const SolverConfig& config);

// Dispatches on config.mode. In auto mode a branch-and-bound that does not
// close within its limits is followed by tabu search and the better
// solution is returned with status kHeuristic.
SolveOutcome Solve(const QuboInstance& instance, const SolverConfig& config);

}  // namespace robqubo

#endif  // ROBQUBO_SOLVER_H_
