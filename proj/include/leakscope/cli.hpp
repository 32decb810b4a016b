// Copyright 2026 The LeakScope Authors
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

#include "leakscope/paths.hpp"
#include "leakscope/provider.hpp"

namespace leakscope {

enum class OutputFormat { Text, Json };

struct RunConfig {
  std::vector<std::string> inputs;  // files or directories
  /// Method name (`m` or `Type.m`) or a line inside the method; empty
  /// selects every method.
  std::string method;
  ProviderConfig provider;
  OutputFormat format = OutputFormat::Text;
  std::size_t max_paths = kDefaultMaxPaths;
  int jobs = 1;
  bool dump_cfg = false;
  bool dump_paths = false;
};

/// Exit status: 0 no leaks, 1 at least one leak, 2 on any error.
inline constexpr int kExitClean = 0;
inline constexpr int kExitLeaks = 1;
inline constexpr int kExitError = 2;

/// Analyzes every selected method. Reports go to `out` in input order;
/// diagnostics and debug dumps go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

struct EvalConfig {
  std::string dataset;
  ProviderConfig provider;
  OutputFormat format = OutputFormat::Text;
  std::size_t max_paths = kDefaultMaxPaths;
  int jobs = 1;
};

/// Replays a benchmark dataset. 0 on success, 2 on error.
int run_eval(const EvalConfig& config, std::ostream& out, std::ostream& err);

/// Parses the command line and dispatches.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace leakscope
