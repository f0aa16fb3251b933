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

#include "robqubo/io.h"

#include <fstream>
#include <istream>

#include "json.hpp"
#include "robqubo/errors.h"

namespace robqubo {

using nlohmann::json;

namespace {

json Load(std::istream& in, const char* what) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string(what) + ": " + e.what());
  }
}

template <typename T>
T Field(const json& obj, const char* key, const char* what) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(0, std::string(what) + ": missing field \"" + key + "\"");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(0, std::string(what) + ": field \"" + key + "\" has the wrong type");
  }
}

std::string Dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

ScenarioGenerators ParseGeneratorsJson(std::istream& in) {
  constexpr const char* kWhat = "generator file";
  json doc = Load(in, kWhat);
  const int n = Field<int>(doc, "n", kWhat);
  const json entries = Field<json>(doc, "entries", kWhat);
  if (!entries.is_array()) throw ParseError(0, "generator file: entries must be an array");
  std::vector<GeneratorEntry> out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    GeneratorEntry g{Field<int>(e, "i", kWhat), Field<int>(e, "j", kWhat),
                     Field<double>(e, "a", kWhat), Field<double>(e, "b", kWhat)};
    if (g.i > g.j) throw ParseError(0, "generator file: entries need i <= j");
    out.push_back(g);
  }
  if (n < 1) throw ParseError(0, "generator file: n must be at least 1");
  try {
    return ScenarioGenerators::FromEntries(n, std::move(out));
  } catch (const InputError& e) {
    throw ParseError(0, std::string("generator file: ") + e.what());
  }
}

ScenarioGenerators ReadGeneratorsFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open generator file " + path);
  return ParseGeneratorsJson(in);
}

std::string GeneratorsToJson(const ScenarioGenerators& gen) {
  json entries = json::array();
  for (const auto& e : gen.entries()) {
    entries.push_back({{"i", e.i}, {"j", e.j}, {"a", e.level_a}, {"b", e.level_b}});
  }
  return Dump({{"n", gen.n()}, {"entries", std::move(entries)}});
}

std::string SolveOutcomeToJson(const SolveOutcome& outcome) {
  return Dump({{"bits", BitsToString(outcome.solution.bits)},
               {"value", outcome.solution.value},
               {"status", SolveStatusName(outcome.status)},
               {"nodes_or_iterations", outcome.nodes_or_iterations}});
}

std::string PreprocessToJson(const FixReport& fix, const SensitivityReport& sensitivity) {
  json fixed = json::array();
  for (const auto& a : fix.assignments) {
    fixed.push_back({{"index", a.index}, {"bit", a.bit}, {"delta", a.delta},
                     {"all_optima", a.all_optima}});
  }
  json records = json::array();
  for (const auto& r : sensitivity.records) {
    records.push_back({{"index", r.index}, {"delta", r.delta},
                       {"fixable", FixableName(r.fixable)}, {"near", r.near_threshold}});
  }
  return Dump({{"constant", fix.constant},
               {"rounds", fix.rounds},
               {"reduced_n", fix.reduced.n()},
               {"fixed", std::move(fixed)},
               {"sensitivity", std::move(records)}});
}

std::string ReportToJson(const RobustnessReport& report) {
  json pool = json::array();
  for (const auto& e : report.pool) {
    pool.push_back({{"bits", e.bits}, {"frequency", e.frequency}, {"mean_value", e.mean_value}});
  }
  json coverage = nullptr;
  if (report.coverage) {
    coverage = {{"reference_bits", report.coverage->reference_bits},
                {"percent", report.coverage->percent}};
  }
  return Dump({{"k", report.k},
               {"pool", std::move(pool)},
               {"most_robust", report.most_robust},
               {"coverage", std::move(coverage)},
               {"exactness", report.exactness}});
}

std::string ModelToJson(const SurfaceModel& model) {
  json coefficients = json::array();
  for (std::size_t m = 0; m < model.coefficients.size(); ++m) {
    coefficients.push_back({{"i", model.diff.positions[m].i},
                            {"j", model.diff.positions[m].j},
                            {"beta", model.coefficients[m]}});
  }
  return Dump({{"intercept", model.intercept},
               {"coefficients", std::move(coefficients)},
               {"standard_error", model.standard_error},
               {"dof", model.dof}});
}

SurfaceModel ParseModelJson(std::istream& in) {
  constexpr const char* kWhat = "model file";
  json doc = Load(in, kWhat);
  SurfaceModel model;
  model.intercept = Field<double>(doc, "intercept", kWhat);
  model.standard_error = Field<double>(doc, "standard_error", kWhat);
  model.dof = Field<int>(doc, "dof", kWhat);
  const json coefficients = Field<json>(doc, "coefficients", kWhat);
  if (!coefficients.is_array()) throw ParseError(0, "model file: coefficients must be an array");
  for (const auto& c : coefficients) {
    model.diff.positions.push_back({Field<int>(c, "i", kWhat), Field<int>(c, "j", kWhat)});
    model.coefficients.push_back(Field<double>(c, "beta", kWhat));
  }
  if (model.standard_error < 0.0 || model.dof < 0) {
    throw ParseError(0, "model file: negative standard error or dof");
  }
  return model;
}

}  // namespace robqubo
