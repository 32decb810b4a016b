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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "leakscope/cfg.hpp"
#include "leakscope/intent.hpp"

namespace leakscope {

/// One entry-to-exit walk through a Cfg.
struct ControlFlowPath {
  int id = 0;
  std::vector<int> nodes;  // entry first, exit last
  std::vector<int> edges;  // edges[i] joins nodes[i] and nodes[i + 1]
  bool risky = false;
};

class PathExplosion : public std::runtime_error {
 public:
  explicit PathExplosion(std::size_t ceiling)
      : std::runtime_error("path explosion: more than " + std::to_string(ceiling) +
                           " paths"),
        ceiling_(ceiling) {}
  std::size_t ceiling() const { return ceiling_; }

 private:
  std::size_t ceiling_;
};

inline constexpr std::size_t kDefaultMaxPaths = 4096;

struct EnumerateOptions {
  std::size_t max_paths = kDefaultMaxPaths;
};

/// Paths with both pruning rules applied: each loop body is entered at most
/// once per path (do-while bodies run exactly once), and at a branching node
/// whose branches neither touch an Acquire/Release line nor contain a return
/// or throw only the first branch is followed. Throws PathExplosion.
std::vector<ControlFlowPath> enumerate(const Cfg& cfg, const IntentionSet& intents,
                                       const EnumerateOptions& options = {});

/// Every path that enters each loop body at most `loop_bound` times.
std::vector<ControlFlowPath> enumerate_exhaustive(const Cfg& cfg, int loop_bound,
                                                  std::size_t max_paths = kDefaultMaxPaths);

/// Immediate post-dominator of every node (-1 for the exit).
std::vector<int> post_dominators(const Cfg& cfg);

/// Branching nodes at which enumerate() keeps only the first branch.
std::vector<bool> prunable_branches(const Cfg& cfg, const IntentionSet& intents);

/// Line-interval notation such as "[160-185, 186, 187-190]". A path is cut
/// wherever the paths in `all` diverge or rejoin.
std::string format_intervals(const Cfg& cfg, const ControlFlowPath& path,
                             const std::vector<ControlFlowPath>& all);

/// Distinct owned source lines along the path, in visiting order.
std::vector<int> path_lines(const Cfg& cfg, const ControlFlowPath& path);

}  // namespace leakscope
