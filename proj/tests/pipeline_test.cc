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

#include "robqubo/pipeline.h"

#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "oracle.h"
#include "robqubo/errors.h"
#include "robqubo/io.h"

namespace robqubo {
namespace {

SolverConfig Exact() {
  SolverConfig config;
  config.mode = SolveMode::kExact;
  config.time_budget = 0.0;
  return config;
}

TEST(RobustAnalysisTest, NoVariationGivesSingleScenario) {
  auto gen = ScenarioGenerators::FromEntries(2, {{0, 0, 3, 3}, {0, 1, -1, -1}});
  RobustAnalysis a = RunRobustAnalysis(gen, Exact());
  EXPECT_EQ(a.report.k, 1);
  ASSERT_EQ(a.report.pool.size(), 1u);
  EXPECT_EQ(a.report.pool[0].frequency, 1);
  EXPECT_EQ(a.report.pool[0].bits, "10");
  EXPECT_EQ(a.report.most_robust, "10");
  EXPECT_EQ(a.report.exactness, 1.0);
}

TEST(RobustAnalysisTest, BusinessFixtureInvariants) {
  auto gen = ReadGeneratorsFile(ROBQUBO_DATA_DIR "/business_generators.json");
  RobustAnalysis a = RunRobustAnalysis(gen, Exact());
  EXPECT_EQ(a.report.k, 64);
  int total = 0;
  for (const auto& e : a.report.pool) {
    total += e.frequency;
    double sum = 0.0;
    int count = 0;
    for (const auto& r : a.results) {
      if (BitsToString(r.solution.bits) != e.bits) continue;
      EXPECT_EQ(Evaluate(a.scenarios[r.scenario_index], r.solution.bits), r.value);
      sum += r.value;
      ++count;
    }
    EXPECT_EQ(count, e.frequency);
    EXPECT_DOUBLE_EQ(sum / count, e.mean_value);
  }
  EXPECT_EQ(total, 64);
  EXPECT_EQ(a.report.most_robust, MostRobust(a.report));
}

TEST(RobustAnalysisTest, IndependentOfWorkerCount) {
  std::mt19937_64 rng(5);
  auto base = testing::RandomInstance(30, 0.15, -100, 100, rng);
  auto gen = PerturbedGenerators(base, 0.1);
  SolverConfig config;
  config.time_budget = 0.0;
  RobustAnalysis one = RunRobustAnalysis(gen, config, 1);
  RobustAnalysis four = RunRobustAnalysis(gen, config, 4);
  EXPECT_EQ(ReportToJson(one.report), ReportToJson(four.report));
  std::ostringstream a;
  std::ostringstream b;
  WriteScenarioCsv(one.results, a);
  WriteScenarioCsv(four.results, b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_THROW(RunRobustAnalysis(gen, config, 0), InputError);
}

TEST(MostRobustTest, TieRules) {
  RobustnessReport report;
  report.pool = {{"01", 5, 10.0}, {"10", 5, 12.0}};
  EXPECT_EQ(MostRobust(report), "10");
  report.pool = {{"10", 5, 12.0}, {"01", 5, 12.0}};
  EXPECT_EQ(MostRobust(report), "01");
  report.pool = {{"11", 1, 3.0}};
  EXPECT_EQ(MostRobust(report), "11");
  report.pool.clear();
  EXPECT_THROW(MostRobust(report), StateError);
}

TEST(PoolResultsTest, SortsByIndexBeforePooling) {
  auto q = QuboInstance::FromEntries(2, {{0, 0, 1}, {1, 1, 1}});
  std::vector<ScenarioResult> results(3);
  results[0] = {2, BinarySolution::Of(q, {1, 1}), SolveStatus::kProvenOptimal, 2};
  results[1] = {0, BinarySolution::Of(q, {1, 0}), SolveStatus::kHeuristic, 1};
  results[2] = {1, BinarySolution::Of(q, {1, 1}), SolveStatus::kProvenOptimal, 4};
  RobustnessReport report = PoolResults(results);
  EXPECT_EQ(report.k, 3);
  ASSERT_EQ(report.pool.size(), 2u);
  EXPECT_EQ(report.pool[0].bits, "10");
  EXPECT_EQ(report.pool[1].bits, "11");
  EXPECT_EQ(report.pool[1].frequency, 2);
  EXPECT_EQ(report.pool[1].mean_value, 3);
  EXPECT_DOUBLE_EQ(report.exactness, 2.0 / 3.0);
  EXPECT_EQ(report.most_robust, "11");
}

TEST(CoverageTest, FullAndEmpty) {
  auto gen = ScenarioGenerators::FromEntries(2, {{0, 0, 2, 4}, {1, 1, -1, -1}});
  RobustAnalysis a = RunRobustAnalysis(gen, Exact());
  EXPECT_EQ(Coverage(a.results, a.scenarios, Bits{1, 0}), 100.0);
  EXPECT_EQ(Coverage(a.results, a.scenarios, Bits{0, 1}), 0.0);
  EXPECT_THROW(Coverage(a.results, a.scenarios, Bits{1}), InputError);
}

TEST(CoverageTest, DominatesPoolShareOfBaseOptimum) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 4; ++trial) {
    auto base = testing::RandomInstance(14, 0.3, -100, 100, rng);
    RobustAnalysis a = RunRobustAnalysis(PerturbedGenerators(base, 0.05), Exact());
    Bits best = SolveExact(base, Exact()).solution.bits;
    const std::string key = BitsToString(best);
    double share = 0.0;
    for (const auto& e : a.report.pool) {
      if (e.bits == key) share = 100.0 * e.frequency / a.report.k;
    }
    EXPECT_GE(Coverage(a.results, a.scenarios, best), share);
  }
}

TEST(ScenarioCsvTest, RoundTripAndErrors) {
  auto q = QuboInstance::FromEntries(2, {{0, 0, 1.5}});
  std::vector<ScenarioResult> results{
      {0, BinarySolution::Of(q, {1, 0}), SolveStatus::kProvenOptimal, 1.5}};
  std::ostringstream out;
  WriteScenarioCsv(results, out);
  EXPECT_EQ(out.str(), "index,bits,value,status\n0,10,1.5,proven_optimal\n");
  std::istringstream in(out.str());
  auto records = ReadScenarioCsv(in);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].bits, "10");
  EXPECT_EQ(records[0].value, 1.5);

  std::istringstream bad_header("i,b\n");
  EXPECT_THROW(ReadScenarioCsv(bad_header), ParseError);
  std::istringstream bad_row("index,bits,value,status\n0,12,1,x\n");
  EXPECT_THROW(ReadScenarioCsv(bad_row), ParseError);
  std::istringstream bad_value("index,bits,value,status\n0,10,abc,x\n");
  EXPECT_THROW(ReadScenarioCsv(bad_value), ParseError);
}

}  // namespace
}  // namespace robqubo
