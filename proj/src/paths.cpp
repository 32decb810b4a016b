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

#include "leakscope/paths.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace leakscope {

namespace {

bool is_branching(NodeKind kind) {
  return kind == NodeKind::IfBranch || kind == NodeKind::SwitchBranch ||
         kind == NodeKind::TryEntry;
}

class Walker {
 public:
  Walker(const Cfg& cfg, int loop_bound, std::size_t max_paths, std::vector<bool> first_only)
      : cfg_(cfg),
        loop_bound_(loop_bound),
        max_paths_(max_paths),
        first_only_(std::move(first_only)),
        taken_(cfg.edges().size(), 0) {}

  std::vector<ControlFlowPath> run() {
    nodes_.push_back(cfg_.entry());
    visit(cfg_.entry());
    return std::move(paths_);
  }

 private:
  int limit(const CfgEdge& e) const {
    return cfg_.node(e.src).do_while ? loop_bound_ - 1 : loop_bound_;
  }

  void visit(int node) {
    if (node == cfg_.exit()) {
      if (paths_.size() == max_paths_) throw PathExplosion(max_paths_);
      ControlFlowPath p;
      p.id = static_cast<int>(paths_.size());
      p.nodes = nodes_;
      p.edges = edges_;
      paths_.push_back(std::move(p));
      return;
    }
    const auto& outs = cfg_.out_edges(node);
    for (std::size_t i = 0; i < outs.size(); ++i) {
      if (i > 0 && first_only_[node]) break;
      const CfgEdge& e = cfg_.edge(outs[i]);
      if (e.label == EdgeLabel::LoopBody && taken_[e.id] >= limit(e)) continue;
      ++taken_[e.id];
      nodes_.push_back(e.dst);
      edges_.push_back(e.id);
      visit(e.dst);
      edges_.pop_back();
      nodes_.pop_back();
      --taken_[e.id];
    }
  }

  const Cfg& cfg_;
  int loop_bound_;
  std::size_t max_paths_;
  std::vector<bool> first_only_;
  std::vector<int> taken_;
  std::vector<int> nodes_;
  std::vector<int> edges_;
  std::vector<ControlFlowPath> paths_;
};

}  // namespace

std::vector<int> post_dominators(const Cfg& cfg) {
  // Cooper-Harvey-Kennedy on the reversed graph, rooted at the exit.
  const int n = static_cast<int>(cfg.nodes().size());
  std::vector<int> order;  // reverse-graph postorder
  std::vector<int> rank(n, -1);
  std::vector<bool> seen(n, false);
  std::function<void(int)> dfs = [&](int v) {
    seen[v] = true;
    for (int e : cfg.in_edges(v)) {
      const int w = cfg.edge(e).src;
      if (!seen[w]) dfs(w);
    }
    rank[v] = static_cast<int>(order.size());
    order.push_back(v);
  };
  dfs(cfg.exit());

  std::vector<int> idom(n, -1);
  idom[cfg.exit()] = cfg.exit();
  auto intersect = [&](int a, int b) {
    while (a != b) {
      while (rank[a] < rank[b]) a = idom[a];
      while (rank[b] < rank[a]) b = idom[b];
    }
    return a;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int v = *it;
      if (v == cfg.exit()) continue;
      int next = -1;
      for (int e : cfg.out_edges(v)) {
        const int w = cfg.edge(e).dst;
        if (idom[w] == -1) continue;
        next = next == -1 ? w : intersect(w, next);
      }
      if (next != -1 && idom[v] != next) {
        idom[v] = next;
        changed = true;
      }
    }
  }
  idom[cfg.exit()] = -1;
  return idom;
}

std::vector<bool> prunable_branches(const Cfg& cfg, const IntentionSet& intents) {
  const int n = static_cast<int>(cfg.nodes().size());
  std::vector<bool> dirty(n, false);
  for (const auto& node : cfg.nodes()) {
    dirty[node.id] = node.kind == NodeKind::Return || node.kind == NodeKind::Throw ||
                     std::any_of(node.owned_lines.begin(), node.owned_lines.end(),
                                 [&](int line) { return intents.touches_resource(line); });
  }
  const auto ipdom = post_dominators(cfg);
  std::vector<bool> prunable(n, false);
  for (const auto& node : cfg.nodes()) {
    if (!is_branching(node.kind) || cfg.out_edges(node.id).size() < 2) continue;
    const int stop = ipdom[node.id];
    // Everything reachable from the branch targets before the paths rejoin.
    std::vector<bool> seen(n, false);
    std::deque<int> work;
    for (int e : cfg.out_edges(node.id)) {
      const int w = cfg.edge(e).dst;
      if (w != stop && !seen[w]) {
        seen[w] = true;
        work.push_back(w);
      }
    }
    bool clean = true;
    while (!work.empty() && clean) {
      const int v = work.front();
      work.pop_front();
      if (dirty[v]) clean = false;
      for (int e : cfg.out_edges(v)) {
        const int w = cfg.edge(e).dst;
        if (w != stop && !seen[w]) {
          seen[w] = true;
          work.push_back(w);
        }
      }
    }
    prunable[node.id] = clean;
  }
  return prunable;
}

std::vector<ControlFlowPath> enumerate(const Cfg& cfg, const IntentionSet& intents,
                                       const EnumerateOptions& options) {
  return Walker(cfg, 1, options.max_paths, prunable_branches(cfg, intents)).run();
}

std::vector<ControlFlowPath> enumerate_exhaustive(const Cfg& cfg, int loop_bound,
                                                  std::size_t max_paths) {
  if (loop_bound < 1) throw std::invalid_argument("loop bound must be >= 1");
  return Walker(cfg, loop_bound, max_paths, std::vector<bool>(cfg.nodes().size(), false))
      .run();
}

std::string format_intervals(const Cfg& cfg, const ControlFlowPath& path,
                             const std::vector<ControlFlowPath>& all) {
  const std::size_t n = cfg.nodes().size();
  std::vector<std::set<int>> outs(n);
  std::vector<std::set<int>> ins(n);
  for (const auto& p : all) {
    for (int e : p.edges) {
      outs[cfg.edge(e).src].insert(e);
      ins[cfg.edge(e).dst].insert(e);
    }
  }
  std::string out = "[";
  int lo = 0;
  int hi = 0;
  auto flush = [&] {
    if (out.size() > 1) out += ", ";
    out += std::to_string(lo);
    if (hi != lo) out += "-" + std::to_string(hi);
  };
  for (std::size_t i = 0; i < path.nodes.size(); ++i) {
    const CfgNode& node = cfg.node(path.nodes[i]);
    const bool cut = i > 0 && (outs[path.nodes[i - 1]].size() >= 2 || ins[node.id].size() >= 2);
    if (i == 0 || cut) {
      if (i > 0) flush();
      lo = node.span.first;
      hi = node.span.last;
    } else {
      lo = std::min(lo, node.span.first);
      hi = std::max(hi, node.span.last);
    }
  }
  if (!path.nodes.empty()) flush();
  return out + "]";
}

std::vector<int> path_lines(const Cfg& cfg, const ControlFlowPath& path) {
  std::vector<int> lines;
  std::set<int> seen;
  for (int id : path.nodes) {
    for (int line : cfg.node(id).owned_lines) {
      if (seen.insert(line).second) lines.push_back(line);
    }
  }
  return lines;
}

}  // namespace leakscope
