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

#ifndef ROBQUBO_PREPROCESS_H_
#define ROBQUBO_PREPROCESS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "robqubo/qubo.h"

namespace robqubo {

// Which value the diagonal-dominance rules force on a variable.
enum class Fixable { kNone, kOne, kZero };

const char* FixableName(Fixable f);

// Local view of one row of Q: the diagonal and the sums of its negative and
// positive off-diagonal coefficients (each c_ij counted once).
struct RowSummary {
  double diagonal = 0.0;
  double negative_sum = 0.0;
  double positive_sum = 0.0;
};

RowSummary SummarizeRow(const QuboInstance& instance, int i);

// Delta p_i = c_ii + 2 * (negative sum) when c_ii >= 0, otherwise
// Delta n_i = c_ii + 2 * (positive sum). A positive Delta p certifies
// x_i = 1, a negative Delta n certifies x_i = 0.
double RowDelta(const RowSummary& row);

struct RuleOutcome {
  Fixable fixable = Fixable::kNone;
  // True for the strict dominance rules, which hold in every optimum. The
  // zero-diagonal variants only hold in some optimum.
  bool strict = false;
};

RuleOutcome ApplyFixingRules(const RowSummary& row);

// Delta p_i / Delta n_i of variable `i`. Throws InputError if `i` is out of
// range.
double DeltaP(const QuboInstance& instance, int i);

// How far the symmetric pair c_ij may fall before x_i = 1 is no longer
// guaranteed: Delta p_i / 2, since the pair enters the row sum twice.
// Throws StateError unless `i` is fixable to one by the strict rule.
double PairSlack(const QuboInstance& instance, int i, int j);

struct Assignment {
  int index = 0;
  std::uint8_t bit = 0;
};

struct ReducedInstance {
  QuboInstance instance;
  // Objective contributed by the fixed variables.
  double constant = 0.0;
  // index_map[r] is the original index of reduced variable r.
  std::vector<int> index_map;
};

// Removes the assigned variables. Variables fixed to one fold 2 * c_ij into
// each surviving diagonal; variables fixed to zero simply disappear. Throws
// InputError on a duplicate or out-of-range index or a non-binary bit.
ReducedInstance Reduce(const QuboInstance& instance,
                       std::span<const Assignment> assignments);

struct FixedVariable {
  int index = 0;
  std::uint8_t bit = 0;
  // Row delta at the moment the rule fired.
  double delta = 0.0;
  // The value holds in every optimum of the original instance (strict rule,
  // and no weaker fix preceded it).
  bool all_optima = false;
};

struct FixReport {
  std::vector<FixedVariable> assignments;  // in firing order
  double constant = 0.0;
  QuboInstance reduced;
  std::vector<int> index_map;
  int rounds = 0;

  // Expands an assignment of the reduced instance to the original variables.
  Bits Expand(std::span<const std::uint8_t> reduced_bits) const;
};

// Applies the fixing rules in ascending index order, folding each fix into
// the working matrix immediately, and repeats rounds until one fires nothing.
FixReport FixVariables(const QuboInstance& instance);

struct SensitivityRecord {
  int index = 0;
  double diagonal = 0.0;
  double delta = 0.0;
  Fixable fixable = Fixable::kNone;
  bool near_threshold = false;
};

struct SensitivityReport {
  std::vector<SensitivityRecord> records;
};

// Per-variable deltas on the unreduced instance. A variable is flagged near
// its threshold when it is not fixable and |delta| <= near_tolerance.
SensitivityReport AnalyzeSensitivity(const QuboInstance& instance,
                                     double near_tolerance);

}  // namespace robqubo

#endif  // ROBQUBO_PREPROCESS_H_
