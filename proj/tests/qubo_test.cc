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
#include <numeric>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "oracle.h"
#include "robqubo/errors.h"

namespace robqubo {
namespace {

using testing::BitsOfMask;
using testing::FiveVariable;

QuboInstance SmallMixed() {
  return QuboInstance::FromEntries(2, {{0, 0, 1}, {1, 1, 2}, {0, 1, -3}});
}

TEST(QuboInstanceTest, StoresUpperTriangularAndDropsZeros) {
  auto q = QuboInstance::FromEntries(3, {{2, 0, 4}, {1, 1, 0}, {1, 0, -2}});
  ASSERT_EQ(q.num_entries(), 2u);
  EXPECT_EQ(q.entries()[0], (Coefficient{0, 1, -2}));
  EXPECT_EQ(q.entries()[1], (Coefficient{0, 2, 4}));
  EXPECT_EQ(q.coefficient(2, 0), 4);
  EXPECT_EQ(q.coefficient(1, 2), 0);
  ASSERT_EQ(q.neighbors(0).size(), 2u);
  EXPECT_EQ(q.neighbors(0)[0].index, 1);
  EXPECT_EQ(q.neighbors(2)[0].index, 0);
}

TEST(QuboInstanceTest, RejectsDuplicatesAndOutOfRange) {
  EXPECT_THROW(QuboInstance::FromEntries(2, {{0, 1, 1}, {1, 0, 2}}), InputError);
  EXPECT_THROW(QuboInstance::FromEntries(2, {{0, 2, 1}}), InputError);
  EXPECT_THROW(QuboInstance::FromEntries(2, {{-1, 0, 1}}), InputError);
}

TEST(EvaluateTest, FiveVariableOptimum) {
  EXPECT_EQ(Evaluate(FiveVariable(), Bits{0, 1, 0, 1, 1}), 288);
}

TEST(EvaluateTest, AllZeroIsZero) {
  EXPECT_EQ(Evaluate(FiveVariable(), Bits(5, 0)), 0);
}

TEST(EvaluateTest, OffDiagonalCountsTwice) {
  EXPECT_EQ(Evaluate(SmallMixed(), Bits{1, 1}), -3);
}

TEST(EvaluateTest, RejectsBadAssignments) {
  EXPECT_THROW(Evaluate(SmallMixed(), Bits{1}), InputError);
  EXPECT_THROW(Evaluate(SmallMixed(), Bits{1, 2}), InputError);
}

TEST(EvaluateTest, MatchesDenseExpansion) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    auto q = testing::RandomInstance(n, 0.6, -50, 50, rng);
    auto dense = testing::Dense(q);
    Bits x = testing::RandomBits(n, rng);
    EXPECT_EQ(Evaluate(q, x), testing::DenseEvaluate(dense, x));
  }
}

TEST(EvaluateTest, InvariantUnderPermutation) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 9);
    auto q = testing::RandomInstance(n, 0.5, -20, 20, rng);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Coefficient> moved;
    for (const auto& e : q.entries()) moved.push_back({perm[e.i], perm[e.j], e.value});
    auto p = QuboInstance::FromEntries(n, moved);
    Bits x = testing::RandomBits(n, rng);
    Bits y(n);
    for (int i = 0; i < n; ++i) y[perm[i]] = x[i];
    EXPECT_EQ(Evaluate(q, x), Evaluate(p, y));
  }
}

TEST(PositiveSumBoundTest, Examples) {
  EXPECT_EQ(PositiveSumBound(FiveVariable()), 550);
  EXPECT_EQ(PositiveSumBound(SmallMixed()), 3);
  auto negative = QuboInstance::FromEntries(3, {{0, 0, -1}, {0, 2, -4}, {1, 2, -2}});
  EXPECT_EQ(PositiveSumBound(negative), 0);
}

TEST(PositiveSumBoundTest, DominatesEveryAssignment) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    auto q = testing::RandomInstance(n, 0.5, -100, 100, rng);
    const double bound = PositiveSumBound(q);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      ASSERT_LE(Evaluate(q, BitsOfMask(n, mask)), bound);
    }
  }
}

TEST(ParseInstanceTest, OneBasedFieldMapping) {
  auto q = ParseInstanceString("2 3\n1 1 1\n2 2 2\n1 2 -3\n");
  EXPECT_EQ(q.n(), 2);
  EXPECT_EQ(q.coefficient(0, 0), 1);
  EXPECT_EQ(q.coefficient(1, 1), 2);
  EXPECT_EQ(q.coefficient(0, 1), -3);
}

TEST(ParseInstanceTest, SingleVariable) {
  auto q = ParseInstanceString("1 1\n1 1 5\n");
  EXPECT_EQ(q.n(), 1);
  EXPECT_EQ(q.diagonal(0), 5);
}

TEST(ParseInstanceTest, CommentsBlankLinesAndLowerTriangle) {
  auto q = ParseInstanceString("# header\n\n3 2\n  # note\n3 1 7\n1 3 7\n");
  EXPECT_EQ(q.num_entries(), 1u);
  EXPECT_EQ(q.coefficient(0, 2), 7);
}

TEST(ParseInstanceTest, ErrorsNameTheLine) {
  try {
    ParseInstanceString("2 1\n1 3 4\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(ParseInstanceString("2 2\n1 2 4\n2 1 5\n"), ParseError);
  EXPECT_THROW(ParseInstanceString("2 1\n1 x 4\n"), ParseError);
  EXPECT_THROW(ParseInstanceString("2 2\n1 1 4\n"), ParseError);
  EXPECT_THROW(ParseInstanceString("2 1\n1 1 4\n2 2 1\n"), ParseError);
  EXPECT_THROW(ParseInstanceString("0 0\n"), ParseError);
  EXPECT_THROW(ParseInstanceString(""), ParseError);
}

TEST(ParseInstanceTest, WriterRoundTrip) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto q = testing::RandomInstance(1 + static_cast<int>(rng() % 15), 0.4, -100, 100, rng);
    std::ostringstream out;
    WriteInstance(q, out);
    auto back = ParseInstanceString(out.str());
    ASSERT_EQ(back.n(), q.n());
    ASSERT_TRUE(std::equal(q.entries().begin(), q.entries().end(), back.entries().begin(),
                           back.entries().end()));
  }
}

TEST(BitsTest, StringConversion) {
  EXPECT_EQ(BitsToString(Bits{0, 1, 0, 1, 1}), "01011");
  EXPECT_EQ(BitsFromString("01011"), (Bits{0, 1, 0, 1, 1}));
  EXPECT_THROW(BitsFromString("012"), InputError);
}

TEST(FormatNumberTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatNumber(288), "288");
  EXPECT_EQ(FormatNumber(-1.5), "-1.5");
  EXPECT_EQ(FormatNumber(-0.0), "0");
  EXPECT_EQ(FormatNumber(0.1), "0.1");
}

}  // namespace
}  // namespace robqubo
