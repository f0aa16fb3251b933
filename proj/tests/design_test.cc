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

#include <sstream>

#include "gtest/gtest.h"
#include "robqubo/errors.h"
#include "robqubo/io.h"

namespace robqubo {
namespace {

ScenarioGenerators Business() {
  return ReadGeneratorsFile(ROBQUBO_DATA_DIR "/business_generators.json");
}

TEST(DifferingElementsTest, BusinessGenerators) {
  DifferenceSet diff = DifferingElements(Business());
  EXPECT_EQ(diff.d(), 22);
  for (const auto& p : diff.positions) EXPECT_FALSE(p.i == 1 && p.j == 1);
  EXPECT_TRUE(std::is_sorted(diff.positions.begin(), diff.positions.end()));
}

TEST(DifferingElementsTest, EqualLevelsAndSingleDiagonal) {
  auto same = ScenarioGenerators::FromEntries(2, {{0, 0, 3, 3}, {0, 1, -1, -1}});
  EXPECT_EQ(DifferingElements(same).d(), 0);
  auto one = ScenarioGenerators::FromEntries(3, {{2, 2, 1, 4}, {0, 1, 2, 2}});
  DifferenceSet diff = DifferingElements(one);
  ASSERT_EQ(diff.d(), 1);
  EXPECT_EQ(diff.positions[0], (Position{2, 2}));
}

TEST(RunCountTest, Examples) {
  EXPECT_EQ(RunCount(23), 64);
  EXPECT_EQ(RunCount(22), 64);
  EXPECT_EQ(RunCount(123), 256);
  EXPECT_EQ(RunCount(130), 512);
  EXPECT_EQ(RunCount(0), 1);
  EXPECT_EQ(RunCount(1), 4);
  EXPECT_EQ(RunCount(2), 4);
  EXPECT_EQ(RunCount(3), 8);
  for (int d = 0; d < 600; ++d) EXPECT_GE(RunCount(d), d + 1);
}

TEST(BuildDesignTest, SylvesterColumnsForK4) {
  DesignMatrix e = BuildDesign(4, 3);
  const int expected[3][4] = {{1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
  for (int m = 0; m < 3; ++m) {
    for (int r = 0; r < 4; ++r) EXPECT_EQ(e.level(r, m), expected[m][r]) << r << "," << m;
  }
}

TEST(BuildDesignTest, BalancedAndOrthogonal) {
  for (int d : {1, 3, 22, 23, 64, 130}) {
    DesignMatrix e = BuildDesign(RunCount(d), d);
    EXPECT_TRUE(e.IsBalanced()) << d;
    EXPECT_TRUE(e.IsOrthogonal()) << d;
  }
  DesignMatrix big = BuildDesign(64, 23);
  int pairs = 0;
  for (int a = 0; a < 23; ++a) {
    for (int b = a + 1; b < 23; ++b) {
      long dot = 0;
      for (int r = 0; r < 64; ++r) dot += big.level(r, a) * big.level(r, b);
      EXPECT_EQ(dot, 0);
      ++pairs;
    }
  }
  EXPECT_EQ(pairs, 253);
  for (int m = 0; m < 23; ++m) EXPECT_EQ(big.level(0, m), 1);
}

TEST(BuildDesignTest, Preconditions) {
  EXPECT_THROW(BuildDesign(6, 2), InputError);
  EXPECT_THROW(BuildDesign(4, 4), InputError);
  EXPECT_NO_THROW(BuildDesign(8, 7));
  EXPECT_THROW(BuildDesign(8, 0), InputError);
}

TEST(DesignMatrixTest, DetectsNonOrthogonalTables) {
  DesignMatrix e(4, 2, {1, 1, 1, 1, -1, -1, -1, -1});
  EXPECT_TRUE(e.IsBalanced());
  EXPECT_FALSE(e.IsOrthogonal());
  EXPECT_THROW(DesignMatrix(2, 1, {1, 0}), InputError);
  EXPECT_THROW(DesignMatrix(2, 1, {1}), InputError);
}

TEST(InstantiateScenarioTest, ExtremesAndSingleFactor) {
  ScenarioGenerators gen = Business();
  DifferenceSet diff = DifferingElements(gen);
  std::vector<std::int8_t> plus(diff.d(), 1);
  std::vector<std::int8_t> minus(diff.d(), -1);
  QuboInstance upper = InstantiateScenario(gen, diff, plus);
  QuboInstance lower = InstantiateScenario(gen, diff, minus);
  for (const auto& e : gen.entries()) {
    EXPECT_EQ(upper.coefficient(e.i, e.j), e.level_a);
    EXPECT_EQ(lower.coefficient(e.i, e.j), e.level_b);
  }

  std::vector<std::int8_t> row = minus;
  for (int m = 0; m < diff.d(); ++m) {
    if (diff.positions[m] == Position{5, 8}) row[m] = 1;
  }
  QuboInstance one = InstantiateScenario(gen, diff, row);
  EXPECT_EQ(one.coefficient(5, 8), 9);
  EXPECT_EQ(one.coefficient(3, 8), -7);
  EXPECT_EQ(one.coefficient(0, 0), 2);
  EXPECT_EQ(one.coefficient(0, 1), -100);
  EXPECT_THROW(InstantiateScenario(gen, diff, std::vector<std::int8_t>(3, 1)), InputError);
}

TEST(InstantiateScenarioTest, FoldOverPairsSumToGeneratorSum) {
  ScenarioGenerators gen = Business();
  DifferenceSet diff = DifferingElements(gen);
  DesignMatrix e = BuildDesign(RunCount(diff.d()), diff.d());
  for (int r = 0; r < e.k(); ++r) {
    std::vector<std::int8_t> row(e.row(r).begin(), e.row(r).end());
    std::vector<std::int8_t> flipped = row;
    for (auto& v : flipped) v = static_cast<std::int8_t>(-v);
    QuboInstance a = InstantiateScenario(gen, diff, row);
    QuboInstance b = InstantiateScenario(gen, diff, flipped);
    for (const auto& p : diff.positions) {
      const auto& g = gen.entries()[gen.Find(p.i, p.j)];
      EXPECT_EQ(a.coefficient(p.i, p.j) + b.coefficient(p.i, p.j), g.level_a + g.level_b);
    }
  }
}

TEST(AverageInstanceTest, Midpoints) {
  QuboInstance avg = AverageInstance(Business());
  EXPECT_EQ(avg.coefficient(0, 0), -1.5);
  EXPECT_EQ(avg.coefficient(1, 1), 2);
  EXPECT_EQ(avg.coefficient(0, 2), -100);
  auto zeros = ScenarioGenerators::FromEntries(2, {{0, 0, 0, 0}});
  EXPECT_EQ(AverageInstance(zeros).num_entries(), 0u);
}

TEST(PerturbedGeneratorsTest, SignPreservingScaling) {
  auto q = QuboInstance::FromEntries(3, {{0, 0, 100}, {0, 1, -40}});
  ScenarioGenerators gen = PerturbedGenerators(q, 0.05);
  ASSERT_EQ(gen.entries().size(), 2u);
  EXPECT_DOUBLE_EQ(gen.entries()[0].level_a, 105);
  EXPECT_DOUBLE_EQ(gen.entries()[0].level_b, 95);
  EXPECT_DOUBLE_EQ(gen.entries()[1].level_a, -42);
  EXPECT_DOUBLE_EQ(gen.entries()[1].level_b, -38);
  EXPECT_EQ(gen.Find(1, 2), -1);
  EXPECT_THROW(PerturbedGenerators(q, 0.0), InputError);
  EXPECT_THROW(PerturbedGenerators(q, -0.1), InputError);
}

TEST(RandomScenarioTest, WithinBoundsAndDeterministic) {
  ScenarioGenerators gen = Business();
  int draws = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    QuboInstance s = RandomScenario(gen, seed);
    for (const auto& e : gen.entries()) {
      const double v = s.coefficient(e.i, e.j);
      EXPECT_GE(v, std::min(e.level_a, e.level_b));
      EXPECT_LE(v, std::max(e.level_a, e.level_b));
      ++draws;
    }
  }
  EXPECT_GE(draws, 10000);
  QuboInstance a = RandomScenario(gen, 42);
  QuboInstance b = RandomScenario(gen, 42);
  EXPECT_TRUE(std::equal(a.entries().begin(), a.entries().end(), b.entries().begin(),
                         b.entries().end()));

  auto fixed = ScenarioGenerators::FromEntries(2, {{0, 0, 3, 3}, {0, 1, -2, -2}});
  QuboInstance c = RandomScenario(fixed, 9);
  EXPECT_EQ(c.coefficient(0, 0), 3);
  EXPECT_EQ(c.coefficient(0, 1), -2);
}

TEST(GeneratorsTest, Validation) {
  EXPECT_THROW(ScenarioGenerators::FromEntries(2, {{0, 2, 1, 1}}), InputError);
  EXPECT_THROW(ScenarioGenerators::FromEntries(2, {{0, 1, 1, 1}, {1, 0, 2, 2}}), InputError);
}

TEST(DesignCsvTest, HeaderAndRows) {
  auto gen = ScenarioGenerators::FromEntries(3, {{0, 0, 1, 2}, {0, 2, 3, 4}, {1, 1, 5, 6}});
  DifferenceSet diff = DifferingElements(gen);
  std::ostringstream out;
  WriteDesignCsv(BuildDesign(8, 3), diff, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "pos_0_0,pos_0_2,pos_1_1");
  std::getline(in, line);
  EXPECT_EQ(line, "+1,+1,+1");
  std::getline(in, line);
  EXPECT_EQ(line, "-1,+1,-1");
}

TEST(DeriveSeedTest, StreamsDiffer) {
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(1, 1));
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(2, 0));
  EXPECT_EQ(DeriveSeed(5, 3), DeriveSeed(5, 3));
}

}  // namespace
}  // namespace robqubo
