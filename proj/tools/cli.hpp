// SPDX-License-Identifier: Apache-2.0
//
// rissense: backward sensing toolkit for reconfigurable intelligent surfaces
// Copyright (C) 2026 The rissense authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rissense::cli {

enum ExitCode : int { ok = 0, other_error = 1, config_error = 2, numerical_error = 3 };

struct Invocation {
    std::string subcommand;
    std::optional<std::string> config_path;
    std::string output_dir = "results";
    std::vector<std::string> overrides;
    std::optional<unsigned long long> seed;
    int threads = 0;
};

/// Executes one invocation. Errors are reported on `err` as single
/// "error: kind=... key=value ..." lines.
int run(const Invocation &invocation, std::ostream &out, std::ostream &err);

/// Parses argv and runs.
int main_entry(int argc, char **argv, std::ostream &out, std::ostream &err);

} // namespace rissense::cli
