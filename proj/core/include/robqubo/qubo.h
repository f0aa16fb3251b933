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

#ifndef ROBQUBO_QUBO_H_
#define ROBQUBO_QUBO_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace robqubo {

// One bit per variable, each 0 or 1.
using Bits = std::vector<std::uint8_t>;

// Upper-triangular coefficient: i <= j. An off-diagonal entry stands for
// both c_ij and c_ji of the symmetric matrix, so it contributes twice to
// x^t Q x.
struct Coefficient {
  int i = 0;
  int j = 0;
  double value = 0.0;

  friend bool operator==(const Coefficient&, const Coefficient&) = default;
};

// Off-diagonal neighbour of a variable in the adjacency view.
struct Neighbor {
  int index = 0;
  double value = 0.0;
};

// Symmetric n x n matrix Q of an unconstrained binary quadratic problem
// (maximize x^t Q x), stored sparse and upper-triangular. Immutable once
// built; safe to share across threads.
class QuboInstance {
 public:
  QuboInstance() = default;

  // Builds a validated instance. Entries with i > j are mirrored to (j, i),
  // zero values are dropped. Throws InputError on an out-of-range index or
  // a repeated position.
  static QuboInstance FromEntries(int n, std::vector<Coefficient> entries,
                                  std::string name = {});

  int n() const { return n_; }
  const std::string& name() const { return name_; }

  // Nonzero entries sorted by (i, j).
  std::span<const Coefficient> entries() const { return entries_; }
  std::size_t num_entries() const { return entries_.size(); }

  double diagonal(int i) const { return diagonal_[i]; }
  std::span<const double> diagonals() const { return diagonal_; }

  // Off-diagonal neighbours of `i` sorted by index.
  std::span<const Neighbor> neighbors(int i) const {
    return std::span<const Neighbor>(adjacency_).subspan(
        offsets_[i], offsets_[i + 1] - offsets_[i]);
  }

  // Value of c_ij (== c_ji); zero when absent.
  double coefficient(int i, int j) const;

 private:
  int n_ = 0;
  std::string name_;
  std::vector<Coefficient> entries_;
  std::vector<double> diagonal_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

// A binary assignment together with its objective value.
struct BinarySolution {
  Bits bits;
  double value = 0.0;

  // Evaluates `bits` against `instance`.
  static BinarySolution Of(const QuboInstance& instance, Bits bits);
};

// x^t Q x = sum_i c_ii x_i + 2 sum_{i<j} c_ij x_i x_j.
// Throws InputError on a length mismatch or a bit outside {0, 1}.
double Evaluate(const QuboInstance& instance, std::span<const std::uint8_t> bits);

// Sum of positive diagonals plus twice the positive off-diagonals; an upper
// bound on x^t Q x for every binary x.
double PositiveSumBound(const QuboInstance& instance);

// Reads the OR-Library style text format: a first line "n m" followed by m
// lines "i j v" with 1-based indices. Blank lines and '#' comments are
// skipped. Throws ParseError naming the offending line.
QuboInstance ParseInstance(std::istream& in, std::string name = {});
QuboInstance ParseInstanceString(std::string_view text);
QuboInstance ReadInstanceFile(const std::string& path);

// Writes the same format with entries sorted by (i, j).
void WriteInstance(const QuboInstance& instance, std::ostream& out);

// "0101..." rendering of a bit vector, bit 0 first.
std::string BitsToString(std::span<const std::uint8_t> bits);
Bits BitsFromString(std::string_view text);

// Shortest text that round-trips `value` ("288", "-1.5", "0.1").
std::string FormatNumber(double value);

}  // namespace robqubo

#endif  // ROBQUBO_QUBO_H_
