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

#include "robqubo/qubo.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

#include "robqubo/errors.h"

namespace robqubo {

QuboInstance QuboInstance::FromEntries(int n, std::vector<Coefficient> entries,
                                       std::string name) {
  if (n < 0) throw InputError("variable count must be non-negative");
  for (auto& e : entries) {
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.i < 0 || e.j >= n) {
      throw InputError("coefficient (" + std::to_string(e.i) + ", " +
                       std::to_string(e.j) + ") outside [0, " +
                       std::to_string(n) + ")");
    }
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return std::pair(a.i, a.j) < std::pair(b.i, b.j);
  });
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (entries[k].i == entries[k - 1].i && entries[k].j == entries[k - 1].j) {
      throw InputError("duplicate coefficient (" + std::to_string(entries[k].i) +
                       ", " + std::to_string(entries[k].j) + ")");
    }
  }
  std::erase_if(entries, [](const Coefficient& e) { return e.value == 0.0; });

  QuboInstance q;
  q.n_ = n;
  q.name_ = std::move(name);
  q.entries_ = std::move(entries);
  q.diagonal_.assign(n, 0.0);

  std::vector<std::size_t> degree(n, 0);
  for (const auto& e : q.entries_) {
    if (e.i == e.j) {
      q.diagonal_[e.i] = e.value;
    } else {
      ++degree[e.i];
      ++degree[e.j];
    }
  }
  q.offsets_.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) q.offsets_[i + 1] = q.offsets_[i] + degree[i];
  q.adjacency_.resize(q.offsets_[n]);
  std::vector<std::size_t> cursor(q.offsets_.begin(), q.offsets_.end() - 1);
  for (const auto& e : q.entries_) {
    if (e.i == e.j) continue;
    q.adjacency_[cursor[e.j]++] = {e.i, e.value};
  }
  for (const auto& e : q.entries_) {
    if (e.i == e.j) continue;
    q.adjacency_[cursor[e.i]++] = {e.j, e.value};
  }
  for (int i = 0; i < n; ++i) {
    std::sort(q.adjacency_.begin() + q.offsets_[i],
              q.adjacency_.begin() + q.offsets_[i + 1],
              [](const Neighbor& a, const Neighbor& b) { return a.index < b.index; });
  }
  return q;
}

double QuboInstance::coefficient(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n_) throw InputError("coefficient index out of range");
  if (i == j) return diagonal_[i];
  auto row = neighbors(i);
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const Neighbor& nb, int idx) { return nb.index < idx; });
  return (it != row.end() && it->index == j) ? it->value : 0.0;
}

BinarySolution BinarySolution::Of(const QuboInstance& instance, Bits bits) {
  double value = Evaluate(instance, bits);
  return {std::move(bits), value};
}

double Evaluate(const QuboInstance& instance,
                std::span<const std::uint8_t> bits) {
  if (bits.size() != static_cast<std::size_t>(instance.n())) {
    throw InputError("assignment has " + std::to_string(bits.size()) +
                     " bits, instance has " + std::to_string(instance.n()) +
                     " variables");
  }
  for (auto b : bits) {
    if (b > 1) throw InputError("assignment entry is not binary");
  }
  double value = 0.0;
  for (const auto& e : instance.entries()) {
    if (!bits[e.i] || !bits[e.j]) continue;
    value += e.i == e.j ? e.value : 2.0 * e.value;
  }
  return value;
}

double PositiveSumBound(const QuboInstance& instance) {
  double bound = 0.0;
  for (const auto& e : instance.entries()) {
    if (e.value <= 0.0) continue;
    bound += e.i == e.j ? e.value : 2.0 * e.value;
  }
  return bound;
}

namespace {

bool IsSkippable(std::string_view line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string_view::npos || line[pos] == '#';
}

template <typename T>
bool ReadField(std::istringstream& fields, T& out) {
  return static_cast<bool>(fields >> out);
}

}  // namespace

QuboInstance ParseInstance(std::istream& in, std::string name) {
  std::string line;
  std::size_t line_no = 0;
  long long n = -1;
  long long m = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsSkippable(line)) continue;
    std::istringstream fields(line);
    std::string extra;
    if (!ReadField(fields, n) || !ReadField(fields, m) || (fields >> extra)) {
      throw ParseError(line_no, "expected header \"n m\"");
    }
    break;
  }
  if (n < 0) throw ParseError(line_no, "missing header line");
  if (n < 1) throw ParseError(line_no, "instance needs at least one variable");
  if (m < 0) throw ParseError(line_no, "negative entry count");

  std::vector<Coefficient> entries;
  std::vector<std::size_t> origin;
  entries.reserve(static_cast<std::size_t>(m));
  long long seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsSkippable(line)) continue;
    std::istringstream fields(line);
    long long i = 0;
    long long j = 0;
    double v = 0.0;
    std::string extra;
    if (!ReadField(fields, i) || !ReadField(fields, j) || !ReadField(fields, v) ||
        (fields >> extra)) {
      throw ParseError(line_no, "expected \"i j value\"");
    }
    if (i < 1 || j < 1 || i > n || j > n) {
      throw ParseError(line_no, "index out of range 1.." + std::to_string(n));
    }
    if (++seen > m) {
      throw ParseError(line_no, "more entries than the declared " + std::to_string(m));
    }
    if (i > j) std::swap(i, j);
    entries.push_back({static_cast<int>(i - 1), static_cast<int>(j - 1), v});
    origin.push_back(line_no);
  }
  if (seen < m) {
    throw ParseError(line_no, "declared " + std::to_string(m) + " entries, found " +
                                  std::to_string(seen));
  }

  // Collapse repeated positions (a symmetric file lists (i,j) and (j,i));
  // they must agree.
  std::vector<std::size_t> order(entries.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::pair(entries[a].i, entries[a].j) < std::pair(entries[b].i, entries[b].j);
  });
  std::vector<Coefficient> unique;
  unique.reserve(entries.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& e = entries[order[k]];
    if (!unique.empty() && unique.back().i == e.i && unique.back().j == e.j) {
      if (unique.back().value != e.value) {
        throw ParseError(origin[order[k]], "conflicting duplicate entry");
      }
      continue;
    }
    unique.push_back(e);
  }
  return QuboInstance::FromEntries(static_cast<int>(n), std::move(unique),
                                   std::move(name));
}

QuboInstance ParseInstanceString(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParseInstance(in);
}

QuboInstance ReadInstanceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file " + path);
  return ParseInstance(in, path);
}

void WriteInstance(const QuboInstance& instance, std::ostream& out) {
  out << instance.n() << ' ' << instance.num_entries() << '\n';
  for (const auto& e : instance.entries()) {
    out << e.i + 1 << ' ' << e.j + 1 << ' ' << FormatNumber(e.value) << '\n';
  }
}

std::string BitsToString(std::span<const std::uint8_t> bits) {
  std::string s(bits.size(), '0');
  for (std::size_t k = 0; k < bits.size(); ++k) s[k] = bits[k] ? '1' : '0';
  return s;
}

Bits BitsFromString(std::string_view text) {
  Bits bits(text.size());
  for (std::size_t k = 0; k < text.size(); ++k) {
    if (text[k] != '0' && text[k] != '1') {
      throw InputError("bit string may only contain '0' and '1'");
    }
    bits[k] = text[k] == '1';
  }
  return bits;
}

std::string FormatNumber(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace robqubo
