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

#include "robqubo/preprocess.h"

#include <cmath>
#include <string>

#include "robqubo/errors.h"

namespace robqubo {

const char* FixableName(Fixable f) {
  switch (f) {
    case Fixable::kOne:
      return "one";
    case Fixable::kZero:
      return "zero";
    case Fixable::kNone:
      break;
  }
  return "none";
}

RowSummary SummarizeRow(const QuboInstance& instance, int i) {
  if (i < 0 || i >= instance.n()) {
    throw InputError("variable index " + std::to_string(i) + " out of range");
  }
  RowSummary row{instance.diagonal(i), 0.0, 0.0};
  for (const auto& nb : instance.neighbors(i)) {
    if (nb.value < 0.0) {
      row.negative_sum += nb.value;
    } else {
      row.positive_sum += nb.value;
    }
  }
  return row;
}

double RowDelta(const RowSummary& row) {
  if (row.diagonal >= 0.0) return row.diagonal + 2.0 * row.negative_sum;
  return row.diagonal + 2.0 * row.positive_sum;
}

RuleOutcome ApplyFixingRules(const RowSummary& row) {
  const double d = row.diagonal;
  if (d > 0.0 && d + 2.0 * row.negative_sum > 0.0) return {Fixable::kOne, true};
  if (d < 0.0 && d + 2.0 * row.positive_sum < 0.0) return {Fixable::kZero, true};
  if (d == 0.0) {
    if (row.negative_sum == 0.0 && row.positive_sum > 0.0) return {Fixable::kOne, false};
    if (row.positive_sum == 0.0 && row.negative_sum < 0.0) return {Fixable::kZero, false};
  }
  return {};
}

double DeltaP(const QuboInstance& instance, int i) {
  return RowDelta(SummarizeRow(instance, i));
}

double PairSlack(const QuboInstance& instance, int i, int j) {
  RowSummary row = SummarizeRow(instance, i);
  if (j < 0 || j >= instance.n() || j == i) {
    throw InputError("pair partner " + std::to_string(j) + " invalid for variable " +
                     std::to_string(i));
  }
  RuleOutcome rule = ApplyFixingRules(row);
  if (rule.fixable != Fixable::kOne || !rule.strict) {
    throw StateError("variable " + std::to_string(i) +
                     " is not diagonally dominant; no pair slack");
  }
  return RowDelta(row) / 2.0;
}

ReducedInstance Reduce(const QuboInstance& instance,
                       std::span<const Assignment> assignments) {
  const int n = instance.n();
  // -1 free, otherwise the fixed bit.
  std::vector<int> state(n, -1);
  for (const auto& a : assignments) {
    if (a.index < 0 || a.index >= n) {
      throw InputError("assignment index " + std::to_string(a.index) + " out of range");
    }
    if (a.bit > 1) throw InputError("assignment bit is not binary");
    if (state[a.index] != -1) {
      throw InputError("variable " + std::to_string(a.index) + " assigned twice");
    }
    state[a.index] = a.bit;
  }

  ReducedInstance out;
  std::vector<int> new_index(n, -1);
  for (int i = 0; i < n; ++i) {
    if (state[i] == -1) {
      new_index[i] = static_cast<int>(out.index_map.size());
      out.index_map.push_back(i);
    }
  }

  const int m = static_cast<int>(out.index_map.size());
  std::vector<double> diag(m, 0.0);
  std::vector<Coefficient> entries;
  for (const auto& e : instance.entries()) {
    const int si = state[e.i];
    const int sj = state[e.j];
    if (e.i == e.j) {
      if (si == 1) out.constant += e.value;
      if (si == -1) diag[new_index[e.i]] += e.value;
      continue;
    }
    if (si == -1 && sj == -1) {
      entries.push_back({new_index[e.i], new_index[e.j], e.value});
    } else if (si == 1 && sj == 1) {
      out.constant += 2.0 * e.value;
    } else if (si == 1 && sj == -1) {
      diag[new_index[e.j]] += 2.0 * e.value;
    } else if (sj == 1 && si == -1) {
      diag[new_index[e.i]] += 2.0 * e.value;
    }
  }
  for (int r = 0; r < m; ++r) entries.push_back({r, r, diag[r]});
  out.instance = QuboInstance::FromEntries(m, std::move(entries), instance.name());
  return out;
}

Bits FixReport::Expand(std::span<const std::uint8_t> reduced_bits) const {
  if (reduced_bits.size() != index_map.size()) {
    throw InputError("reduced assignment has wrong length");
  }
  std::size_t n = index_map.size() + assignments.size();
  Bits bits(n, 0);
  for (const auto& a : assignments) bits[a.index] = a.bit;
  for (std::size_t r = 0; r < index_map.size(); ++r) bits[index_map[r]] = reduced_bits[r];
  return bits;
}

FixReport FixVariables(const QuboInstance& instance) {
  const int n = instance.n();
  // Diagonals with the fixed-to-one neighbours folded in.
  std::vector<double> diag(instance.diagonals().begin(), instance.diagonals().end());
  std::vector<bool> free(n, true);

  FixReport report;
  bool weak_seen = false;
  bool fired = true;
  while (fired) {
    fired = false;
    ++report.rounds;
    for (int i = 0; i < n; ++i) {
      if (!free[i]) continue;
      RowSummary row{diag[i], 0.0, 0.0};
      for (const auto& nb : instance.neighbors(i)) {
        if (!free[nb.index]) continue;
        if (nb.value < 0.0) {
          row.negative_sum += nb.value;
        } else {
          row.positive_sum += nb.value;
        }
      }
      RuleOutcome rule = ApplyFixingRules(row);
      if (rule.fixable == Fixable::kNone) continue;

      const std::uint8_t bit = rule.fixable == Fixable::kOne ? 1 : 0;
      report.assignments.push_back({i, bit, RowDelta(row), rule.strict && !weak_seen});
      weak_seen = weak_seen || !rule.strict;
      free[i] = false;
      fired = true;
      if (bit) {
        for (const auto& nb : instance.neighbors(i)) {
          if (free[nb.index]) diag[nb.index] += 2.0 * nb.value;
        }
      }
    }
  }

  std::vector<Assignment> fixed;
  fixed.reserve(report.assignments.size());
  for (const auto& a : report.assignments) fixed.push_back({a.index, a.bit});
  ReducedInstance reduced = Reduce(instance, fixed);
  report.constant = reduced.constant;
  report.reduced = std::move(reduced.instance);
  report.index_map = std::move(reduced.index_map);
  return report;
}

SensitivityReport AnalyzeSensitivity(const QuboInstance& instance,
                                     double near_tolerance) {
  if (!(near_tolerance >= 0.0)) {
    throw InputError("near-threshold tolerance must be non-negative");
  }
  SensitivityReport report;
  report.records.reserve(instance.n());
  for (int i = 0; i < instance.n(); ++i) {
    RowSummary row = SummarizeRow(instance, i);
    SensitivityRecord rec;
    rec.index = i;
    rec.diagonal = row.diagonal;
    rec.delta = RowDelta(row);
    rec.fixable = ApplyFixingRules(row).fixable;
    rec.near_threshold =
        rec.fixable == Fixable::kNone && std::abs(rec.delta) <= near_tolerance;
    report.records.push_back(rec);
  }
  return report;
}

}  // namespace robqubo
