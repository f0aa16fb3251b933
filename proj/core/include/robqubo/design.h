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

#ifndef ROBQUBO_DESIGN_H_
#define ROBQUBO_DESIGN_H_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "robqubo/qubo.h"

namespace robqubo {

// One coefficient position of the two scenario generators. level_a is the
// value in the "upper" matrix and level_b the value in the "lower" one; the
// labels imply no numeric ordering.
struct GeneratorEntry {
  int i = 0;
  int j = 0;
  double level_a = 0.0;
  double level_b = 0.0;
};

// The pair of extreme matrices every scenario is assembled from. A position
// missing from both matrices is zero in every scenario.
class ScenarioGenerators {
 public:
  ScenarioGenerators() = default;

  // Mirrors i > j, sorts by (i, j). Throws InputError on an out-of-range or
  // repeated position.
  static ScenarioGenerators FromEntries(int n, std::vector<GeneratorEntry> entries);

  int n() const { return n_; }
  std::span<const GeneratorEntry> entries() const { return entries_; }

  // Index into entries() of position (i, j), or -1.
  int Find(int i, int j) const;

 private:
  int n_ = 0;
  std::vector<GeneratorEntry> entries_;
};

struct Position {
  int i = 0;
  int j = 0;

  friend auto operator<=>(const Position&, const Position&) = default;
};

// Positions whose two levels differ, sorted by (i, j). Each one becomes a
// two-level factor of the experimental design.
struct DifferenceSet {
  std::vector<Position> positions;

  int d() const { return static_cast<int>(positions.size()); }
};

// k x d table of +1 / -1 levels; column m drives positions[m] of the
// difference set it was built for.
class DesignMatrix {
 public:
  DesignMatrix() = default;

  // Row-major levels. Throws InputError unless every entry is +1 or -1 and
  // the size is k * d.
  DesignMatrix(int k, int d, std::vector<std::int8_t> levels);

  int k() const { return k_; }
  int d() const { return d_; }
  std::int8_t level(int run, int factor) const { return levels_[run * d_ + factor]; }
  std::span<const std::int8_t> row(int run) const {
    return std::span<const std::int8_t>(levels_).subspan(
        static_cast<std::size_t>(run) * d_, d_);
  }

  // Every column has exactly k/2 entries at +1.
  bool IsBalanced() const;
  // Every pair of distinct columns has a zero dot product.
  bool IsOrthogonal() const;

 private:
  int k_ = 0;
  int d_ = 0;
  std::vector<std::int8_t> levels_;
};

DifferenceSet DifferingElements(const ScenarioGenerators& gen);

// Smallest power of two k >= 2d, at least 4 once there is any factor;
// 1 when d == 0.
int RunCount(int d);

// Columns 1..d of the order-k Sylvester-Hadamard matrix, whose entry (r, c)
// is (-1)^popcount(r & c). Throws InputError unless k is a power of two
// and 1 <= d <= k - 1. RunCount always leaves k >= 2d.
DesignMatrix BuildDesign(int k, int d);

// Scenario for one design row: +1 picks level_a, -1 picks level_b at each
// differing position. Throws InputError on a length mismatch or a position
// of `diff` that does not differ in `gen`.
QuboInstance InstantiateScenario(const ScenarioGenerators& gen,
                                 const DifferenceSet& diff,
                                 std::span<const std::int8_t> row);

// Element-wise midpoint of the two generators.
QuboInstance AverageInstance(const ScenarioGenerators& gen);

// level_a = c (1 + fraction), level_b = c (1 - fraction) for every nonzero
// coefficient. Throws InputError unless fraction > 0.
ScenarioGenerators PerturbedGenerators(const QuboInstance& instance, double fraction);

// Each differing position drawn uniformly from the closed interval between
// its two levels with a generator seeded by `seed`.
QuboInstance RandomScenario(const ScenarioGenerators& gen, std::uint64_t seed);

// Independent per-stream seed (splitmix64 over base and stream), used to
// give every scenario its own generator.
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t stream);

// CSV with a "pos_i_j" header and one "+1"/"-1" row per run.
void WriteDesignCsv(const DesignMatrix& design, const DifferenceSet& diff,
                    std::ostream& out);

}  // namespace robqubo

#endif  // ROBQUBO_DESIGN_H_
