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

#include <optional>
#include <string>
#include <vector>

#include "leakscope/cfg.hpp"
#include "leakscope/intent.hpp"
#include "leakscope/paths.hpp"
#include "leakscope/snippet.hpp"

namespace leakscope {

/// Two groups of paths that share a prefix up to an if-statement and then
/// leave it along different edges.
struct BranchPair {
  std::vector<ControlFlowPath*> first;
  std::vector<ControlFlowPath*> second;
};

struct LeakVerdict {
  std::string resource;
  bool leaked = false;
  std::optional<ControlFlowPath> witness;
  std::vector<int> acquire_lines;
};

struct LeakReport {
  std::string resource;
  std::vector<int> acquire_lines;
  std::vector<int> witness_lines;
  std::string witness;  // interval notation, e.g. "[160-185]"
  std::string method_id;
};

/// Net Acquire minus Release count of `res` along the path.
int resource_balance(const Cfg& cfg, const ControlFlowPath& path, const std::string& res,
                     const IntentionSet& intents);

/// Marks each path risky when its balance for `res` is positive.
void stage1(std::vector<ControlFlowPath>& paths, const Cfg& cfg, const std::string& res,
            const IntentionSet& intents);

/// Clears false-alarm paths at if-statements that validate `res`, innermost
/// (highest line) first. Never sets a flag.
void stage2(std::vector<ControlFlowPath>& paths, const Cfg& cfg, const std::string& res,
            const IntentionSet& intents);

/// If one side is entirely risky and the other entirely clean, clears the
/// risky side.
void propagate(BranchPair& pair);

/// Stage 1 then Stage 2 on a private copy of `paths`.
LeakVerdict detect(const std::string& res, const std::vector<ControlFlowPath>& paths,
                   const IntentionSet& intents, const Cfg& cfg);

struct AnalyzeOptions {
  std::size_t max_paths = kDefaultMaxPaths;
};

struct Analysis {
  Cfg cfg;
  std::vector<ControlFlowPath> paths;
  std::vector<LeakVerdict> verdicts;  // one per acquired resource
  std::vector<LeakReport> reports;    // leaked, minus try-with-resources variables
};

/// Full pipeline for one method. Throws UnsupportedConstruct, PathExplosion.
Analysis analyze(const MethodSnippet& snippet, const IntentionSet& intents,
                 const AnalyzeOptions& options = {});

std::vector<LeakReport> analyze_method(const MethodSnippet& snippet, const IntentionSet& intents,
                                       const AnalyzeOptions& options = {});

/// Single-line JSON object.
std::string to_json(const LeakReport& report);

}  // namespace leakscope
