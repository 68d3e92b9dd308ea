// Copyright 2026 The ellipdecay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace ellipdecay {

enum ExitCode : int { exit_ok = 0, exit_internal = 1, exit_validation = 2, exit_convergence = 3 };

/// Runs one verb. argv excludes the program name. The document goes to `out`,
/// diagnostics and usage text to `err`.
int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

/// JSON text with every floating value printed with 17 significant digits
/// (non-finite values become null). Two-space indentation.
std::string emit_json(const nlohmann::ordered_json& j);

}  // namespace ellipdecay
