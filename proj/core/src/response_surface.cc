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

#include "robqubo/response_surface.h"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

#include "robqubo/errors.h"

namespace robqubo {

namespace {

void CheckFitInputs(const DesignMatrix& design, std::span<const double> optima,
                    const DifferenceSet& diff) {
  if (optima.size() != static_cast<std::size_t>(design.k())) {
    throw InputError("expected " + std::to_string(design.k()) + " optima, got " +
                     std::to_string(optima.size()));
  }
  if (diff.d() != design.d()) {
    throw InputError("difference set has " + std::to_string(diff.d()) +
                     " positions but the design has " + std::to_string(design.d()) +
                     " factors");
  }
  // With no differing element every scenario is the same matrix and the
  // intercept alone is exact, so a single run suffices.
  if (design.d() > 0 && design.k() - design.d() - 1 < 1) {
    throw InputError("regression needs k - d - 1 >= 1 (k = " +
                     std::to_string(design.k()) + ", d = " + std::to_string(design.d()) +
                     ")");
  }
}

void FinishModel(const DesignMatrix& design, std::span<const double> optima,
                 SurfaceModel& model) {
  double ssr = 0.0;
  for (int r = 0; r < design.k(); ++r) {
    double fitted = model.intercept;
    for (int m = 0; m < design.d(); ++m) fitted += model.coefficients[m] * design.level(r, m);
    const double residual = optima[r] - fitted;
    ssr += residual * residual;
  }
  model.dof = design.k() - design.d() - 1;
  model.standard_error = model.dof > 0 ? std::sqrt(ssr / model.dof) : 0.0;
}

double Gap(double bound, double optimum) {
  if (optimum == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return 100.0 * (bound - optimum) / std::abs(optimum);
}

}  // namespace

std::vector<double> CodeScenario(const ScenarioGenerators& gen, const DifferenceSet& diff,
                                 const QuboInstance& instance) {
  if (instance.n() != gen.n()) throw InputError("scenario size differs from generators");
  std::vector<bool> differing(gen.entries().size(), false);
  std::vector<double> z;
  z.reserve(diff.positions.size());
  for (const auto& p : diff.positions) {
    const int idx = gen.Find(p.i, p.j);
    if (idx < 0) throw InputError("difference position missing from generators");
    const GeneratorEntry& e = gen.entries()[idx];
    if (e.level_a == e.level_b) throw InputError("difference position does not differ");
    differing[idx] = true;
    const double q = instance.coefficient(p.i, p.j);
    const double coded = (2.0 * q - (e.level_a + e.level_b)) / (e.level_a - e.level_b);
    if (!(std::abs(coded) <= 1.0 + 1e-12)) {
      throw RangeError("coefficient (" + std::to_string(p.i) + ", " + std::to_string(p.j) +
                       ") = " + FormatNumber(q) + " lies outside its generator levels");
    }
    z.push_back(std::clamp(coded, -1.0, 1.0));
  }
  for (std::size_t idx = 0; idx < gen.entries().size(); ++idx) {
    if (differing[idx]) continue;
    const GeneratorEntry& e = gen.entries()[idx];
    if (instance.coefficient(e.i, e.j) != e.level_a) {
      throw InputError("coefficient (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                       ") differs from its fixed generator value");
    }
  }
  // Positions absent from the generators must be zero.
  for (const auto& c : instance.entries()) {
    if (gen.Find(c.i, c.j) < 0) {
      throw InputError("scenario has a coefficient outside the generator support");
    }
  }
  return z;
}

SurfaceModel FitModel(const DesignMatrix& design, std::span<const double> optima,
                      const DifferenceSet& diff) {
  CheckFitInputs(design, optima, diff);
  if (!design.IsBalanced() || !design.IsOrthogonal()) {
    return FitModelLeastSquares(design, optima, diff);
  }
  SurfaceModel model;
  model.diff = diff;
  const int k = design.k();
  double sum = 0.0;
  for (double y : optima) sum += y;
  model.intercept = sum / k;
  model.coefficients.assign(design.d(), 0.0);
  for (int m = 0; m < design.d(); ++m) {
    double dot = 0.0;
    for (int r = 0; r < k; ++r) dot += design.level(r, m) * optima[r];
    model.coefficients[m] = dot / k;
  }
  FinishModel(design, optima, model);
  return model;
}

SurfaceModel FitModelLeastSquares(const DesignMatrix& design,
                                  std::span<const double> optima,
                                  const DifferenceSet& diff) {
  CheckFitInputs(design, optima, diff);
  const int k = design.k();
  const int d = design.d();
  Eigen::MatrixXd x(k, d + 1);
  Eigen::VectorXd y(k);
  for (int r = 0; r < k; ++r) {
    x(r, 0) = 1.0;
    for (int m = 0; m < d; ++m) x(r, m + 1) = design.level(r, m);
    y(r) = optima[r];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < d + 1) throw InputError("design columns are linearly dependent");
  Eigen::VectorXd beta = qr.solve(y);

  SurfaceModel model;
  model.diff = diff;
  model.intercept = beta(0);
  model.coefficients.assign(beta.data() + 1, beta.data() + 1 + d);
  FinishModel(design, optima, model);
  return model;
}

double Estimate(const SurfaceModel& model, std::span<const double> z) {
  if (z.size() != model.coefficients.size()) {
    throw InputError("coded scenario has " + std::to_string(z.size()) +
                     " entries, model has " + std::to_string(model.coefficients.size()));
  }
  double value = model.intercept;
  for (std::size_t m = 0; m < z.size(); ++m) {
    if (!(std::abs(z[m]) <= 1.0)) throw InputError("coded level outside [-1, 1]");
    value += model.coefficients[m] * z[m];
  }
  return value;
}

double UpperBound(const SurfaceModel& model, std::span<const double> z) {
  return Estimate(model, z) + 3.0 * model.standard_error;
}

BoundComparison CompareBounds(const SurfaceModel& model, const ScenarioGenerators& gen,
                              int count, std::uint64_t seed, const SolverConfig& config,
                              int jobs) {
  if (count < 1) throw InputError("validation needs at least one scenario");
  if (jobs < 1) throw InputError("worker count must be at least 1");
  config.Validate();

  std::vector<BoundRow> rows(count);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (int r = next++; r < count; r = next++) {
      try {
        QuboInstance scenario = RandomScenario(gen, DeriveSeed(seed, r));
        SolverConfig local = config;
        local.mode = SolveMode::kExact;
        local.on_improvement = nullptr;
        SolveOutcome outcome = SolveExact(scenario, local);
        std::vector<double> z = CodeScenario(gen, model.diff, scenario);

        BoundRow& row = rows[r];
        row.scenario = r;
        row.optimum = outcome.solution.value;
        row.g_estimate = Estimate(model, z);
        row.g_bound = row.g_estimate + 3.0 * model.standard_error;
        row.positive_sum_bound = PositiveSumBound(scenario);
        row.g_gap_percent = Gap(row.g_bound, row.optimum);
        row.positive_sum_gap_percent = Gap(row.positive_sum_bound, row.optimum);
        row.proven = outcome.status == SolveStatus::kProvenOptimal;
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  const int workers = std::min(jobs, count);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  BoundComparison cmp;
  int gap_rows = 0;
  int hits = 0;
  for (const auto& row : rows) {
    if (!row.proven) continue;
    ++cmp.proven_rows;
    hits += row.g_bound >= row.optimum;
    if (std::isnan(row.g_gap_percent)) continue;
    ++gap_rows;
    cmp.mean_g_gap += row.g_gap_percent;
    cmp.mean_positive_sum_gap += row.positive_sum_gap_percent;
  }
  if (gap_rows > 0) {
    cmp.mean_g_gap /= gap_rows;
    cmp.mean_positive_sum_gap /= gap_rows;
  }
  if (cmp.proven_rows > 0) cmp.g_bound_hit_rate = static_cast<double>(hits) / cmp.proven_rows;

  std::stable_sort(rows.begin(), rows.end(), [](const BoundRow& a, const BoundRow& b) {
    const bool a_nan = std::isnan(a.g_gap_percent);
    const bool b_nan = std::isnan(b.g_gap_percent);
    if (a_nan != b_nan) return b_nan;
    if (!a_nan && a.g_gap_percent != b.g_gap_percent) return a.g_gap_percent > b.g_gap_percent;
    return a.scenario < b.scenario;
  });
  cmp.rows = std::move(rows);
  return cmp;
}

void WriteComparisonCsv(const BoundComparison& comparison, std::ostream& out) {
  auto cell = [](double v) { return std::isnan(v) ? std::string("nan") : FormatNumber(v); };
  out << "scenario,optimum,g_estimate,g_bound,possum_bound,g_gap_pct,possum_gap_pct\n";
  for (const auto& row : comparison.rows) {
    out << row.scenario << ',' << cell(row.optimum) << ',' << cell(row.g_estimate) << ','
        << cell(row.g_bound) << ',' << cell(row.positive_sum_bound) << ','
        << cell(row.g_gap_percent) << ',' << cell(row.positive_sum_gap_percent) << '\n';
  }
}

}  // namespace robqubo
