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

#include "leakscope/detector.hpp"

#include <algorithm>
#include <map>
#include <nlohmann/json.hpp>
#include <tuple>

namespace leakscope {

int resource_balance(const Cfg& cfg, const ControlFlowPath& path, const std::string& res,
                     const IntentionSet& intents) {
  int counter = 0;
  for (int id : path.nodes) {
    for (int line : cfg.node(id).owned_lines) {
      if (intents.contains(IntentionKind::Acquire, res, line)) ++counter;
      if (intents.contains(IntentionKind::Release, res, line)) --counter;
    }
  }
  return counter;
}

void stage1(std::vector<ControlFlowPath>& paths, const Cfg& cfg, const std::string& res,
            const IntentionSet& intents) {
  for (auto& p : paths) p.risky = resource_balance(cfg, p, res, intents) > 0;
}

void propagate(BranchPair& pair) {
  auto all = [](const std::vector<ControlFlowPath*>& group, bool risky) {
    return std::all_of(group.begin(), group.end(),
                       [&](const ControlFlowPath* p) { return p->risky == risky; });
  };
  if (pair.first.empty() || pair.second.empty()) return;
  if (all(pair.first, true) && all(pair.second, false)) {
    for (auto* p : pair.first) p->risky = false;
  } else if (all(pair.second, true) && all(pair.first, false)) {
    for (auto* p : pair.second) p->risky = false;
  }
}

void stage2(std::vector<ControlFlowPath>& paths, const Cfg& cfg, const std::string& res,
            const IntentionSet& intents) {
  std::vector<int> ifs;
  for (const auto& p : paths) {
    for (int id : p.nodes) {
      if (cfg.node(id).kind == NodeKind::IfBranch) ifs.push_back(id);
    }
  }
  std::sort(ifs.begin(), ifs.end(), [&](int a, int b) {
    return std::make_tuple(-cfg.node(a).span.first, a) <
           std::make_tuple(-cfg.node(b).span.first, b);
  });
  ifs.erase(std::unique(ifs.begin(), ifs.end()), ifs.end());

  for (int stmt : ifs) {
    const CfgNode& node = cfg.node(stmt);
    if (!intents.contains_in_span(IntentionKind::Validate, res, node.span.first,
                                  node.span.last)) {
      continue;
    }
    // prefix (edges up to the if's first occurrence) -> pair split by out-edge
    std::map<std::vector<int>, std::map<int, std::vector<ControlFlowPath*>>> groups;
    for (auto& p : paths) {
      const auto at = std::find(p.nodes.begin(), p.nodes.end(), stmt);
      if (at == p.nodes.end()) continue;
      const auto index = static_cast<std::size_t>(at - p.nodes.begin());
      std::vector<int> prefix(p.edges.begin(), p.edges.begin() + index);
      groups[std::move(prefix)][p.edges[index]].push_back(&p);
    }
    const auto& outs = cfg.out_edges(stmt);
    for (auto& [prefix, by_edge] : groups) {
      BranchPair pair;
      for (auto& [edge, members] : by_edge) {
        auto& side = edge == outs.front() ? pair.first : pair.second;
        side.insert(side.end(), members.begin(), members.end());
      }
      propagate(pair);
    }
  }
}

LeakVerdict detect(const std::string& res, const std::vector<ControlFlowPath>& paths,
                   const IntentionSet& intents, const Cfg& cfg) {
  std::vector<ControlFlowPath> work = paths;
  stage1(work, cfg, res, intents);
  stage2(work, cfg, res, intents);
  LeakVerdict verdict;
  verdict.resource = res;
  verdict.acquire_lines = intents.lines_of(IntentionKind::Acquire, res);
  for (const auto& p : work) {
    if (p.risky) {
      verdict.leaked = true;
      verdict.witness = p;
      break;
    }
  }
  return verdict;
}

Analysis analyze(const MethodSnippet& snippet, const IntentionSet& intents,
                 const AnalyzeOptions& options) {
  Analysis result{build_cfg(snippet), {}, {}, {}};
  result.paths = enumerate(result.cfg, intents, {options.max_paths});
  for (const auto& res : intents.acquired_vars()) {
    LeakVerdict verdict = detect(res, result.paths, intents, result.cfg);
    if (verdict.leaked && !snippet.is_declared_resource(res)) {
      LeakReport report;
      report.resource = res;
      report.acquire_lines = verdict.acquire_lines;
      report.witness_lines = path_lines(result.cfg, *verdict.witness);
      report.witness = format_intervals(result.cfg, *verdict.witness, result.paths);
      report.method_id = snippet.method_id();
      result.reports.push_back(std::move(report));
    }
    result.verdicts.push_back(std::move(verdict));
  }
  return result;
}

std::vector<LeakReport> analyze_method(const MethodSnippet& snippet, const IntentionSet& intents,
                                       const AnalyzeOptions& options) {
  return analyze(snippet, intents, options).reports;
}

std::string to_json(const LeakReport& report) {
  nlohmann::ordered_json j;
  j["resource"] = report.resource;
  j["acquire_lines"] = report.acquire_lines;
  j["witness_lines"] = report.witness_lines;
  j["witness"] = report.witness;
  j["method_id"] = report.method_id;
  return j.dump();
}

}  // namespace leakscope
