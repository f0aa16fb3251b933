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

#ifndef ROBQUBO_PIPELINE_H_
#define ROBQUBO_PIPELINE_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "robqubo/design.h"
#include "robqubo/qubo.h"
#include "robqubo/solver.h"

namespace robqubo {

struct ScenarioResult {
  int scenario_index = 0;
  BinarySolution solution;
  SolveStatus status = SolveStatus::kHeuristic;
  // Optimum (or best found) objective of the scenario.
  double value = 0.0;
};

struct PoolEntry {
  std::string bits;
  int frequency = 0;
  // Mean scenario optimum over the scenarios that returned `bits`.
  double mean_value = 0.0;
};

struct CoverageSummary {
  std::string reference_bits;
  double percent = 0.0;
};

struct RobustnessReport {
  int k = 0;
  std::vector<PoolEntry> pool;  // sorted by bit string
  std::string most_robust;
  std::optional<CoverageSummary> coverage;
  // Fraction of scenarios solved to proven optimality.
  double exactness = 0.0;
};

struct RobustAnalysis {
  DifferenceSet diff;
  DesignMatrix design;
  std::vector<QuboInstance> scenarios;
  std::vector<ScenarioResult> results;  // by scenario index
  RobustnessReport report;
};

// Builds the design for `gen`, solves every scenario on up to `jobs`
// worker threads and pools the returned solutions. Scenario i is solved
// with a seed derived from config.seed and i only, so the result does not
// depend on `jobs` or on completion order.
RobustAnalysis RunRobustAnalysis(const ScenarioGenerators& gen,
                                 const SolverConfig& config, int jobs = 1);

// Groups results by exact bit string.
RobustnessReport PoolResults(std::span<const ScenarioResult> results);

// Percentage of scenarios in which `reference` attains the recorded
// scenario optimum. Throws InputError on a length mismatch.
double Coverage(std::span<const ScenarioResult> results,
                std::span<const QuboInstance> scenarios,
                std::span<const std::uint8_t> reference);

// Highest frequency; ties go to the larger mean value, then to the
// lexicographically smallest bit string. Throws StateError on an empty pool.
std::string MostRobust(const RobustnessReport& report);

// "index,bits,value,status" lines under a header row.
void WriteScenarioCsv(std::span<const ScenarioResult> results, std::ostream& out);

struct ScenarioRecord {
  int scenario_index = 0;
  std::string bits;
  double value = 0.0;
  std::string status;
};

// Reads what WriteScenarioCsv writes. Throws ParseError.
std::vector<ScenarioRecord> ReadScenarioCsv(std::istream& in);

}  // namespace robqubo

#endif  // ROBQUBO_PIPELINE_H_
