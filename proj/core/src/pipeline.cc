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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <utility>

#include "robqubo/errors.h"

namespace robqubo {

RobustAnalysis RunRobustAnalysis(const ScenarioGenerators& gen,
                                 const SolverConfig& config, int jobs) {
  config.Validate();
  if (jobs < 1) throw InputError("worker count must be at least 1");

  RobustAnalysis analysis;
  analysis.diff = DifferingElements(gen);
  const int d = analysis.diff.d();
  const int k = RunCount(d);
  analysis.design = d == 0 ? DesignMatrix(1, 0, {}) : BuildDesign(k, d);

  analysis.scenarios.reserve(k);
  for (int r = 0; r < k; ++r) {
    analysis.scenarios.push_back(
        InstantiateScenario(gen, analysis.diff, analysis.design.row(r)));
  }

  analysis.results.resize(k);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (int r = next++; r < k; r = next++) {
      try {
        SolverConfig local = config;
        local.seed = DeriveSeed(config.seed, static_cast<std::uint64_t>(r));
        local.on_improvement = nullptr;
        SolveOutcome outcome = Solve(analysis.scenarios[r], local);
        ScenarioResult& res = analysis.results[r];
        res.scenario_index = r;
        res.value = outcome.solution.value;
        res.status = outcome.status;
        res.solution = std::move(outcome.solution);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = k;
      }
    }
  };
  const int workers = std::min(jobs, k);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  analysis.report = PoolResults(analysis.results);
  return analysis;
}

RobustnessReport PoolResults(std::span<const ScenarioResult> results) {
  std::vector<const ScenarioResult*> ordered;
  ordered.reserve(results.size());
  for (const auto& r : results) ordered.push_back(&r);
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
    return a->scenario_index < b->scenario_index;
  });

  std::map<std::string, std::pair<int, double>> groups;
  int proven = 0;
  for (const auto* r : ordered) {
    auto& [count, sum] = groups[BitsToString(r->solution.bits)];
    ++count;
    sum += r->value;
    proven += r->status == SolveStatus::kProvenOptimal;
  }

  RobustnessReport report;
  report.k = static_cast<int>(results.size());
  for (const auto& [bits, agg] : groups) {
    report.pool.push_back({bits, agg.first, agg.second / agg.first});
  }
  report.exactness = results.empty() ? 0.0 : static_cast<double>(proven) / report.k;
  if (!report.pool.empty()) report.most_robust = MostRobust(report);
  return report;
}

double Coverage(std::span<const ScenarioResult> results,
                std::span<const QuboInstance> scenarios,
                std::span<const std::uint8_t> reference) {
  if (results.size() != scenarios.size()) {
    throw InputError("results and scenarios differ in count");
  }
  if (results.empty()) return 0.0;
  int covered = 0;
  for (const auto& r : results) {
    if (r.scenario_index < 0 ||
        static_cast<std::size_t>(r.scenario_index) >= scenarios.size()) {
      throw InputError("scenario index out of range");
    }
    const auto& q = scenarios[r.scenario_index];
    if (reference.size() != static_cast<std::size_t>(q.n())) {
      throw InputError("reference solution length does not match the scenarios");
    }
    const double attained = Evaluate(q, reference);
    const double tolerance = 1e-9 * std::max(1.0, std::abs(r.value));
    covered += attained >= r.value - tolerance;
  }
  return 100.0 * covered / static_cast<double>(results.size());
}

std::string MostRobust(const RobustnessReport& report) {
  if (report.pool.empty()) throw StateError("solution pool is empty");
  const PoolEntry* best = &report.pool.front();
  for (const auto& e : report.pool) {
    if (e.frequency != best->frequency) {
      if (e.frequency > best->frequency) best = &e;
    } else if (e.mean_value != best->mean_value) {
      if (e.mean_value > best->mean_value) best = &e;
    } else if (e.bits < best->bits) {
      best = &e;
    }
  }
  return best->bits;
}

void WriteScenarioCsv(std::span<const ScenarioResult> results, std::ostream& out) {
  out << "index,bits,value,status\n";
  for (const auto& r : results) {
    out << r.scenario_index << ',' << BitsToString(r.solution.bits) << ','
        << FormatNumber(r.value) << ',' << SolveStatusName(r.status) << '\n';
  }
}

std::vector<ScenarioRecord> ReadScenarioCsv(std::istream& in) {
  std::vector<ScenarioRecord> records;
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line != "index,bits,value,status") {
        throw ParseError(line_no, "expected header index,bits,value,status");
      }
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream fields(line);
    for (std::string cell; std::getline(fields, cell, ',');) cells.push_back(cell);
    if (cells.size() != 4) throw ParseError(line_no, "expected 4 columns");
    ScenarioRecord rec;
    try {
      std::size_t used = 0;
      rec.scenario_index = std::stoi(cells[0], &used);
      if (used != cells[0].size()) throw std::invalid_argument("index");
      rec.value = std::stod(cells[2], &used);
      if (used != cells[2].size()) throw std::invalid_argument("value");
    } catch (const std::exception&) {
      throw ParseError(line_no, "malformed index or value");
    }
    try {
      BitsFromString(cells[1]);
    } catch (const InputError& e) {
      throw ParseError(line_no, e.what());
    }
    rec.bits = cells[1];
    rec.status = cells[3];
    records.push_back(std::move(rec));
  }
  if (header) throw ParseError(0, "scenario file is empty");
  return records;
}

}  // namespace robqubo
