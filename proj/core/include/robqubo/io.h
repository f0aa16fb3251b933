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

#ifndef ROBQUBO_IO_H_
#define ROBQUBO_IO_H_

#include <iosfwd>
#include <string>

#include "robqubo/design.h"
#include "robqubo/pipeline.h"
#include "robqubo/preprocess.h"
#include "robqubo/response_surface.h"
#include "robqubo/solver.h"

namespace robqubo {

// Generator file:
//   {"n": int, "entries": [{"i": int, "j": int, "a": number, "b": number}]}
// with 0-based i <= j. Throws ParseError on malformed JSON or schema.
ScenarioGenerators ParseGeneratorsJson(std::istream& in);
ScenarioGenerators ReadGeneratorsFile(const std::string& path);
std::string GeneratorsToJson(const ScenarioGenerators& gen);

std::string SolveOutcomeToJson(const SolveOutcome& outcome);

// {"constant", "rounds", "reduced_n", "fixed": [{index, bit, delta}],
//  "sensitivity": [{index, delta, fixable, near}]}
std::string PreprocessToJson(const FixReport& fix, const SensitivityReport& sensitivity);

// {"k", "pool": [{bits, frequency, mean_value}], "most_robust",
//  "coverage": {reference_bits, percent} | null, "exactness"}
std::string ReportToJson(const RobustnessReport& report);

// {"intercept", "coefficients": [{i, j, beta}], "standard_error", "dof"}
std::string ModelToJson(const SurfaceModel& model);
SurfaceModel ParseModelJson(std::istream& in);

}  // namespace robqubo

#endif  // ROBQUBO_IO_H_
