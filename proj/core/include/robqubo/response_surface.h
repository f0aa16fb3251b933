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

#ifndef ROBQUBO_RESPONSE_SURFACE_H_
#define ROBQUBO_RESPONSE_SURFACE_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "robqubo/design.h"
#include "robqubo/qubo.h"
#include "robqubo/solver.h"

namespace robqubo {

// Main-effects regression of the scenario optimum on the coded levels of
// the differing elements:
//   g(z) = intercept + sum_m coefficients[m] * z_m.
struct SurfaceModel {
  double intercept = 0.0;
  std::vector<double> coefficients;  // aligned with diff.positions
  double standard_error = 0.0;       // residual, sqrt(SSR / dof)
  int dof = 0;                       // k - d - 1
  DifferenceSet diff;
};

// Codes each differing element of `instance` onto [-1, +1]:
//   z = (2q - (a + b)) / (a - b),
// so level_a maps to +1 and level_b to -1. Throws RangeError when a value
// lies outside its interval and InputError when a non-differing position
// disagrees with the generators.
std::vector<double> CodeScenario(const ScenarioGenerators& gen,
                                 const DifferenceSet& diff,
                                 const QuboInstance& instance);

// Least-squares fit over the design runs. Uses the closed form
// beta_0 = mean(y), beta_m = column_m . y / k when the design is balanced
// and orthogonal, and a general QR solve otherwise. Throws InputError when
// d >= 1 and dof < 1, or when the sizes disagree. A design without factors
// yields the exact constant model.
SurfaceModel FitModel(const DesignMatrix& design, std::span<const double> optima,
                      const DifferenceSet& diff);

// Always takes the general QR route; exposed to cross-check the shortcut.
SurfaceModel FitModelLeastSquares(const DesignMatrix& design,
                                  std::span<const double> optima,
                                  const DifferenceSet& diff);

// Throws InputError on a length mismatch or an entry outside [-1, 1].
double Estimate(const SurfaceModel& model, std::span<const double> z);

// Estimate plus three residual standard errors.
double UpperBound(const SurfaceModel& model, std::span<const double> z);

struct BoundRow {
  int scenario = 0;
  double optimum = 0.0;
  double g_estimate = 0.0;
  double g_bound = 0.0;
  double positive_sum_bound = 0.0;
  // 100 (bound - optimum) / |optimum|; NaN when the optimum is zero.
  double g_gap_percent = 0.0;
  double positive_sum_gap_percent = 0.0;
  // Solver closed the scenario. Unproven rows stay out of the statistics.
  bool proven = false;
};

struct BoundComparison {
  std::vector<BoundRow> rows;  // descending g_gap_percent, NaN last
  double mean_g_gap = 0.0;
  double mean_positive_sum_gap = 0.0;
  // Share of proven rows with g_bound >= optimum.
  double g_bound_hit_rate = 0.0;
  int proven_rows = 0;
};

// Draws `count` random interior scenarios, solves each exactly and
// compares both bounds against the optimum. Scenario r uses the seed
// DeriveSeed(seed, r). Throws InputError when count < 1.
BoundComparison CompareBounds(const SurfaceModel& model, const ScenarioGenerators& gen,
                              int count, std::uint64_t seed,
                              const SolverConfig& config, int jobs = 1);

// scenario,optimum,g_estimate,g_bound,possum_bound,g_gap_pct,possum_gap_pct
void WriteComparisonCsv(const BoundComparison& comparison, std::ostream& out);

}  // namespace robqubo

#endif  // ROBQUBO_RESPONSE_SURFACE_H_
