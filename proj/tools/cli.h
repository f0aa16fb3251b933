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

#ifndef ROBQUBO_TOOLS_CLI_H_
#define ROBQUBO_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace robqubo::cli {

// Exit codes of the robqubo binary.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

// Runs one command line (args[0] is the program name) and returns its exit
// code. Everything printed goes to `out` / `err`.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace robqubo::cli

#endif  // ROBQUBO_TOOLS_CLI_H_
