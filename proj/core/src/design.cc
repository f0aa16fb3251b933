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

#include "robqubo/design.h"

#include <algorithm>
#include <bit>
#include <ostream>
#include <random>
#include <string>
#include <utility>

#include "robqubo/errors.h"

namespace robqubo {

ScenarioGenerators ScenarioGenerators::FromEntries(int n,
                                                   std::vector<GeneratorEntry> entries) {
  if (n < 0) throw InputError("variable count must be non-negative");
  for (auto& e : entries) {
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.i < 0 || e.j >= n) {
      throw InputError("generator position (" + std::to_string(e.i) + ", " +
                       std::to_string(e.j) + ") outside [0, " + std::to_string(n) +
                       ")");
    }
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return std::pair(a.i, a.j) < std::pair(b.i, b.j);
  });
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (entries[k].i == entries[k - 1].i && entries[k].j == entries[k - 1].j) {
      throw InputError("duplicate generator position (" + std::to_string(entries[k].i) +
                       ", " + std::to_string(entries[k].j) + ")");
    }
  }
  ScenarioGenerators gen;
  gen.n_ = n;
  gen.entries_ = std::move(entries);
  return gen;
}

int ScenarioGenerators::Find(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair(i, j),
                             [](const GeneratorEntry& e, const std::pair<int, int>& p) {
                               return std::pair(e.i, e.j) < p;
                             });
  if (it == entries_.end() || it->i != i || it->j != j) return -1;
  return static_cast<int>(it - entries_.begin());
}

DesignMatrix::DesignMatrix(int k, int d, std::vector<std::int8_t> levels)
    : k_(k), d_(d), levels_(std::move(levels)) {
  if (k < 0 || d < 0 ||
      levels_.size() != static_cast<std::size_t>(k) * static_cast<std::size_t>(d)) {
    throw InputError("design table size does not match k x d");
  }
  for (auto v : levels_) {
    if (v != 1 && v != -1) throw InputError("design levels must be +1 or -1");
  }
}

bool DesignMatrix::IsBalanced() const {
  if (k_ % 2 != 0) return d_ == 0;
  for (int m = 0; m < d_; ++m) {
    int plus = 0;
    for (int r = 0; r < k_; ++r) plus += level(r, m) > 0;
    if (plus != k_ / 2) return false;
  }
  return true;
}

bool DesignMatrix::IsOrthogonal() const {
  for (int a = 0; a < d_; ++a) {
    for (int b = a + 1; b < d_; ++b) {
      long dot = 0;
      for (int r = 0; r < k_; ++r) dot += level(r, a) * level(r, b);
      if (dot != 0) return false;
    }
  }
  return true;
}

DifferenceSet DifferingElements(const ScenarioGenerators& gen) {
  DifferenceSet diff;
  for (const auto& e : gen.entries()) {
    if (e.level_a != e.level_b) diff.positions.push_back({e.i, e.j});
  }
  return diff;
}

int RunCount(int d) {
  if (d < 0) throw InputError("factor count must be non-negative");
  if (d == 0) return 1;
  return std::max(4, static_cast<int>(std::bit_ceil(2u * static_cast<unsigned>(d))));
}

DesignMatrix BuildDesign(int k, int d) {
  if (d < 1) throw InputError("design needs at least one factor");
  if (k < 1 || !std::has_single_bit(static_cast<unsigned>(k))) {
    throw InputError("run count " + std::to_string(k) + " is not a power of two");
  }
  if (d > k - 1) {
    throw InputError("run count " + std::to_string(k) + " has room for at most " +
                     std::to_string(k - 1) + " factors");
  }
  std::vector<std::int8_t> levels(static_cast<std::size_t>(k) * d);
  for (int r = 0; r < k; ++r) {
    for (int m = 0; m < d; ++m) {
      const unsigned column = static_cast<unsigned>(m) + 1;
      levels[static_cast<std::size_t>(r) * d + m] =
          std::popcount(static_cast<unsigned>(r) & column) % 2 == 0 ? 1 : -1;
    }
  }
  return DesignMatrix(k, d, std::move(levels));
}

QuboInstance InstantiateScenario(const ScenarioGenerators& gen,
                                 const DifferenceSet& diff,
                                 std::span<const std::int8_t> row) {
  if (row.size() != diff.positions.size()) {
    throw InputError("design row has " + std::to_string(row.size()) +
                     " levels, difference set has " +
                     std::to_string(diff.positions.size()));
  }
  auto entries = gen.entries();
  std::vector<Coefficient> coefficients;
  coefficients.reserve(entries.size());
  for (const auto& e : entries) coefficients.push_back({e.i, e.j, e.level_a});
  for (std::size_t m = 0; m < row.size(); ++m) {
    const Position& p = diff.positions[m];
    const int idx = gen.Find(p.i, p.j);
    if (idx < 0 || entries[idx].level_a == entries[idx].level_b) {
      throw InputError("position (" + std::to_string(p.i) + ", " + std::to_string(p.j) +
                       ") is not a differing generator element");
    }
    if (row[m] != 1 && row[m] != -1) throw InputError("design levels must be +1 or -1");
    coefficients[idx].value = row[m] > 0 ? entries[idx].level_a : entries[idx].level_b;
  }
  return QuboInstance::FromEntries(gen.n(), std::move(coefficients));
}

QuboInstance AverageInstance(const ScenarioGenerators& gen) {
  std::vector<Coefficient> coefficients;
  coefficients.reserve(gen.entries().size());
  for (const auto& e : gen.entries()) {
    const double mid = e.level_a == e.level_b ? e.level_a : (e.level_a + e.level_b) / 2.0;
    coefficients.push_back({e.i, e.j, mid});
  }
  return QuboInstance::FromEntries(gen.n(), std::move(coefficients));
}

ScenarioGenerators PerturbedGenerators(const QuboInstance& instance, double fraction) {
  if (!(fraction > 0.0)) throw InputError("perturbation fraction must be positive");
  std::vector<GeneratorEntry> entries;
  entries.reserve(instance.num_entries());
  for (const auto& c : instance.entries()) {
    entries.push_back({c.i, c.j, c.value * (1.0 + fraction), c.value * (1.0 - fraction)});
  }
  return ScenarioGenerators::FromEntries(instance.n(), std::move(entries));
}

QuboInstance RandomScenario(const ScenarioGenerators& gen, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Coefficient> coefficients;
  coefficients.reserve(gen.entries().size());
  for (const auto& e : gen.entries()) {
    double value = e.level_a;
    if (e.level_a != e.level_b) {
      const double lo = std::min(e.level_a, e.level_b);
      const double hi = std::max(e.level_a, e.level_b);
      // 53 random mantissa bits, uniform on [0, 1).
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      value = std::clamp(lo + u * (hi - lo), lo, hi);
    }
    coefficients.push_back({e.i, e.j, value});
  }
  return QuboInstance::FromEntries(gen.n(), std::move(coefficients));
}

std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

void WriteDesignCsv(const DesignMatrix& design, const DifferenceSet& diff,
                    std::ostream& out) {
  if (design.d() != diff.d()) throw InputError("design and difference set disagree on d");
  for (int m = 0; m < diff.d(); ++m) {
    if (m) out << ',';
    out << "pos_" << diff.positions[m].i << '_' << diff.positions[m].j;
  }
  out << '\n';
  for (int r = 0; r < design.k(); ++r) {
    for (int m = 0; m < design.d(); ++m) {
      if (m) out << ',';
      out << (design.level(r, m) > 0 ? "+1" : "-1");
    }
    out << '\n';
  }
}

}  // namespace robqubo
