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

#include "cli.h"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "robqubo/design.h"
#include "robqubo/errors.h"
#include "robqubo/io.h"
#include "robqubo/pipeline.h"
#include "robqubo/preprocess.h"
#include "robqubo/qubo.h"
#include "robqubo/response_surface.h"
#include "robqubo/solver.h"

namespace robqubo::cli {

namespace {

struct SolverFlags {
  std::string mode = "auto";
  std::uint64_t seed = SolverConfig{}.seed;
  double budget = SolverConfig{}.time_budget;
  int restarts = SolverConfig{}.restarts;
  int enum_threshold = SolverConfig{}.enum_threshold;
  std::int64_t node_limit = SolverConfig{}.node_limit;
  int tenure = SolverConfig{}.tabu_tenure;

  void Register(CLI::App* app) {
    app->add_option("--mode", mode, "auto | exact | heuristic")
        ->check(CLI::IsMember({"auto", "exact", "heuristic"}));
    app->add_option("--seed", seed, "Seed for every random choice");
    app->add_option("--budget", budget, "Time budget per solve in seconds (<= 0: none)");
    app->add_option("--restarts", restarts, "Tabu search restarts");
    app->add_option("--enum-threshold", enum_threshold,
                    "Enumerate exhaustively up to this many variables");
    app->add_option("--node-limit", node_limit,
                    "Branch-and-bound node limit per solve (0: none)");
    app->add_option("--tenure", tenure, "Tabu tenure");
  }

  SolverConfig Config() const {
    SolverConfig config;
    config.mode = ParseSolveMode(mode);
    config.seed = seed;
    config.time_budget = budget;
    config.restarts = restarts;
    config.enum_threshold = enum_threshold;
    config.node_limit = node_limit;
    config.tabu_tenure = tenure;
    config.Validate();
    return config;
  }
};

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write " + path);
  file << content;
  if (!file) throw InputError("failed writing " + path);
}

template <typename Fn>
std::string Capture(Fn&& fn) {
  std::ostringstream os;
  fn(os);
  return os.str();
}

struct Options {
  std::string in;
  std::string gen;
  std::string out;
  std::string scenarios_out;
  std::string fit_from;
  std::string model_out;
  std::string reference;
  std::optional<double> perturb;
  double near = 0.0;
  int jobs = 1;
  int validate = 64;
  SolverFlags solver;
};

int CmdSolve(const Options& opt, std::ostream& out) {
  QuboInstance instance = ReadInstanceFile(opt.in);
  SolveOutcome outcome = Solve(instance, opt.solver.Config());
  out << "value=" << FormatNumber(outcome.solution.value)
      << " bits=" << BitsToString(outcome.solution.bits)
      << " status=" << SolveStatusName(outcome.status) << '\n';
  if (!opt.out.empty()) WriteFile(opt.out, SolveOutcomeToJson(outcome));
  return kExitOk;
}

int CmdPreprocess(const Options& opt, std::ostream& out) {
  QuboInstance instance = ReadInstanceFile(opt.in);
  FixReport fix = FixVariables(instance);
  SensitivityReport sensitivity = AnalyzeSensitivity(instance, opt.near);
  for (const auto& a : fix.assignments) {
    out << "fix x" << a.index << '=' << int{a.bit} << " delta=" << FormatNumber(a.delta)
        << '\n';
  }
  for (const auto& r : sensitivity.records) {
    if (r.near_threshold) {
      out << "near x" << r.index << " delta=" << FormatNumber(r.delta) << '\n';
    }
  }
  out << "constant=" << FormatNumber(fix.constant) << " reduced_n=" << fix.reduced.n()
      << " rounds=" << fix.rounds << '\n';
  if (!opt.out.empty()) WriteFile(opt.out, PreprocessToJson(fix, sensitivity));
  return kExitOk;
}

int CmdDesign(const Options& opt, std::ostream& out) {
  ScenarioGenerators gen = ReadGeneratorsFile(opt.gen);
  DifferenceSet diff = DifferingElements(gen);
  const int k = RunCount(diff.d());
  if (diff.d() == 0) {
    out << "warning: generators do not differ; the design is a single run\n";
    return kExitOk;
  }
  DesignMatrix design = BuildDesign(k, diff.d());
  std::string csv = Capture([&](std::ostream& os) { WriteDesignCsv(design, diff, os); });
  if (opt.out.empty()) {
    out << csv;
  } else {
    WriteFile(opt.out, csv);
    out << "d=" << diff.d() << " k=" << k << '\n';
  }
  return kExitOk;
}

ScenarioGenerators LoadGenerators(const Options& opt) {
  if (!opt.gen.empty()) {
    if (!opt.in.empty() || opt.perturb) {
      throw InputError("--gen cannot be combined with --in / --perturb");
    }
    return ReadGeneratorsFile(opt.gen);
  }
  if (opt.in.empty() || !opt.perturb) {
    throw InputError("give either --gen or --in with --perturb");
  }
  return PerturbedGenerators(ReadInstanceFile(opt.in), *opt.perturb);
}

void PrintPool(const RobustnessReport& report, std::ostream& out) {
  out << std::left << std::setw(std::max<int>(4, report.most_robust.size()) + 2) << "bits"
      << "frequency  mean_value\n";
  for (const auto& e : report.pool) {
    out << std::left << std::setw(std::max<int>(4, e.bits.size()) + 2) << e.bits
        << std::setw(11) << e.frequency << FormatNumber(e.mean_value) << '\n';
  }
  out << std::right;
}

int CmdAnalyze(const Options& opt, std::ostream& out) {
  ScenarioGenerators gen = LoadGenerators(opt);
  SolverConfig config = opt.solver.Config();
  RobustAnalysis analysis = RunRobustAnalysis(gen, config, opt.jobs);
  RobustnessReport& report = analysis.report;

  if (analysis.diff.d() == 0) {
    out << "warning: generators do not differ; single-scenario report\n";
  }
  if (opt.reference == "average") {
    SolverConfig exact = config;
    exact.mode = SolveMode::kExact;
    SolveOutcome ref = Solve(AverageInstance(gen), exact);
    report.coverage = CoverageSummary{
        BitsToString(ref.solution.bits),
        Coverage(analysis.results, analysis.scenarios, ref.solution.bits)};
  } else if (!opt.reference.empty()) {
    throw InputError("unknown --reference '" + opt.reference + "' (expected: average)");
  }

  out << "k=" << report.k << " d=" << analysis.diff.d() << " distinct=" << report.pool.size()
      << " exactness=" << FormatNumber(report.exactness) << '\n';
  PrintPool(report, out);
  out << "most_robust=" << report.most_robust << '\n';
  if (report.coverage) {
    out << "reference=" << report.coverage->reference_bits
        << " coverage=" << FormatNumber(report.coverage->percent) << "%\n";
  }
  if (!opt.out.empty()) WriteFile(opt.out, ReportToJson(report));
  if (!opt.scenarios_out.empty()) {
    WriteFile(opt.scenarios_out,
              Capture([&](std::ostream& os) { WriteScenarioCsv(analysis.results, os); }));
  }
  return kExitOk;
}

// Refits from a scenario CSV written by `analyze`, or reruns the analysis.
SurfaceModel BuildModel(const Options& opt, const ScenarioGenerators& gen) {
  DifferenceSet diff = DifferingElements(gen);
  const int d = diff.d();
  const int k = RunCount(d);
  if (d > 0 && k - d - 1 < 1) {
    throw InputError("regression needs k - d - 1 >= 1 (k = " + std::to_string(k) +
                     ", d = " + std::to_string(d) + ")");
  }
  DesignMatrix design = d == 0 ? DesignMatrix(1, 0, {}) : BuildDesign(k, d);

  std::vector<double> optima;
  if (!opt.fit_from.empty()) {
    std::ifstream in(opt.fit_from);
    if (!in) throw InputError("cannot open scenario file " + opt.fit_from);
    std::vector<ScenarioRecord> records = ReadScenarioCsv(in);
    if (records.size() != static_cast<std::size_t>(k)) {
      throw InputError("scenario file has " + std::to_string(records.size()) +
                       " rows, the design has k = " + std::to_string(k));
    }
    optima.assign(k, 0.0);
    std::vector<bool> seen(k, false);
    for (const auto& r : records) {
      if (r.scenario_index < 0 || r.scenario_index >= k || seen[r.scenario_index]) {
        throw InputError("scenario file indices must cover 0.." + std::to_string(k - 1));
      }
      seen[r.scenario_index] = true;
      optima[r.scenario_index] = r.value;
    }
  } else {
    RobustAnalysis analysis = RunRobustAnalysis(gen, opt.solver.Config(), opt.jobs);
    for (const auto& r : analysis.results) optima.push_back(r.value);
  }
  return FitModel(design, optima, diff);
}

int CmdFit(const Options& opt, std::ostream& out) {
  ScenarioGenerators gen = ReadGeneratorsFile(opt.gen);
  SurfaceModel model = BuildModel(opt, gen);
  out << "intercept=" << FormatNumber(model.intercept)
      << " standard_error=" << FormatNumber(model.standard_error) << " dof=" << model.dof
      << '\n';
  std::string json = ModelToJson(model);
  if (opt.out.empty()) {
    out << json;
  } else {
    WriteFile(opt.out, json);
  }
  return kExitOk;
}

int CmdBound(const Options& opt, std::ostream& out) {
  ScenarioGenerators gen = ReadGeneratorsFile(opt.gen);
  SurfaceModel model = BuildModel(opt, gen);
  if (!opt.model_out.empty()) WriteFile(opt.model_out, ModelToJson(model));

  BoundComparison cmp = CompareBounds(model, gen, opt.validate, opt.solver.seed,
                                      opt.solver.Config(), opt.jobs);
  out << "intercept=" << FormatNumber(model.intercept)
      << " standard_error=" << FormatNumber(model.standard_error) << " dof=" << model.dof
      << '\n';
  out << "rows=" << cmp.rows.size() << " proven=" << cmp.proven_rows
      << " mean_g_gap_pct=" << FormatNumber(cmp.mean_g_gap)
      << " mean_possum_gap_pct=" << FormatNumber(cmp.mean_positive_sum_gap)
      << " g_bound_hit_rate=" << FormatNumber(cmp.g_bound_hit_rate) << '\n';
  std::string csv = Capture([&](std::ostream& os) { WriteComparisonCsv(cmp, os); });
  if (opt.out.empty()) {
    out << csv;
  } else {
    WriteFile(opt.out, csv);
  }
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust analysis of unconstrained binary quadratic problems"};
  app.require_subcommand(1);
  Options opt;

  auto* solve = app.add_subcommand("solve", "Solve one instance");
  solve->add_option("--in", opt.in, "Instance file")->required();
  solve->add_option("--out", opt.out, "Write a JSON solution report");
  opt.solver.Register(solve);

  auto* pre = app.add_subcommand("preprocess", "Fix variables by diagonal dominance");
  pre->add_option("--in", opt.in, "Instance file")->required();
  pre->add_option("--near", opt.near, "Flag unfixed variables with |delta| <= this");
  pre->add_option("--out", opt.out, "Write the fixing / sensitivity JSON");

  auto* design = app.add_subcommand("design", "Export the two-level design as CSV");
  design->add_option("--gen", opt.gen, "Generator JSON file")->required();
  design->add_option("--out", opt.out, "CSV destination (default: stdout)");

  auto* analyze = app.add_subcommand("analyze", "Solve every design scenario and pool");
  analyze->add_option("--gen", opt.gen, "Generator JSON file");
  analyze->add_option("--in", opt.in, "Instance file to perturb");
  analyze->add_option("--perturb", opt.perturb, "Relative +/- perturbation of --in");
  analyze->add_option("--out", opt.out, "Write the robustness report JSON");
  analyze->add_option("--scenarios", opt.scenarios_out, "Write per-scenario CSV");
  analyze->add_option("--reference", opt.reference,
                      "Coverage reference solution (average)");
  analyze->add_option("--jobs", opt.jobs, "Worker threads")->check(CLI::PositiveNumber);
  opt.solver.Register(analyze);

  auto* fit = app.add_subcommand("fit", "Fit the surface response model");
  fit->add_option("--gen", opt.gen, "Generator JSON file")->required();
  fit->add_option("--fit-from", opt.fit_from, "Scenario CSV written by analyze");
  fit->add_option("--out", opt.out, "Model JSON destination (default: stdout)");
  fit->add_option("--jobs", opt.jobs, "Worker threads")->check(CLI::PositiveNumber);
  opt.solver.Register(fit);

  auto* bound = app.add_subcommand("bound", "Validate surface bounds on random scenarios");
  bound->add_option("--gen", opt.gen, "Generator JSON file")->required();
  bound->add_option("--fit-from", opt.fit_from, "Scenario CSV written by analyze");
  bound->add_option("--validate", opt.validate, "Random validation scenarios")
      ->check(CLI::PositiveNumber);
  bound->add_option("--out", opt.out, "Comparison CSV destination (default: stdout)");
  bound->add_option("--model-out", opt.model_out, "Also write the model JSON");
  bound->add_option("--jobs", opt.jobs, "Worker threads")->check(CLI::PositiveNumber);
  opt.solver.Register(bound);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*solve) return CmdSolve(opt, out);
    if (*pre) return CmdPreprocess(opt, out);
    if (*design) return CmdDesign(opt, out);
    if (*analyze) return CmdAnalyze(opt, out);
    if (*fit) return CmdFit(opt, out);
    if (*bound) return CmdBound(opt, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace robqubo::cli
