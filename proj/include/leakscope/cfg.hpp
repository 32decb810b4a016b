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

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "leakscope/java_ast.hpp"
#include "leakscope/snippet.hpp"

namespace leakscope {

enum class NodeKind {
  Entry,
  Exit,
  Statement,
  IfBranch,
  SwitchBranch,
  LoopHeader,
  TryEntry,  // fans out to the try body and, via catch edges, to each handler
  Return,
  Throw,
};

enum class EdgeLabel { Seq, True, False, Case, LoopBody, LoopExit, Catch };

std::string_view to_string(NodeKind kind);
std::string_view to_string(EdgeLabel label);

struct CfgNode {
  int id = 0;
  NodeKind kind = NodeKind::Statement;
  /// Display span: the whole statement for simple statements, the header
  /// (keyword through closing parenthesis) for compound ones.
  java::LineSpan span;
  std::string text;
  /// Built from a finally block (either the fall-through copy or one routed
  /// in front of a jump).
  bool in_finally = false;
  /// Do-while condition: the body runs before the header is first reached.
  bool do_while = false;
  /// Id of the node this one duplicates, or its own id. Finally blocks are
  /// instantiated once per way out of the try, so several nodes can share
  /// one origin.
  int origin = 0;
  /// Source lines whose intentions this node carries. Every source line is
  /// owned by at most one origin; copies inherit their origin's lines.
  std::vector<int> owned_lines;
};

struct CfgEdge {
  int id = 0;
  int src = 0;
  int dst = 0;
  EdgeLabel label = EdgeLabel::Seq;
};

/// A construct the graph builder refuses to model.
class UnsupportedConstruct : public std::runtime_error {
 public:
  UnsupportedConstruct(std::string construct, int line)
      : std::runtime_error("unsupported construct at line " + std::to_string(line) +
                           ": " + construct),
        construct_(std::move(construct)),
        line_(line) {}
  const std::string& construct() const { return construct_; }
  int line() const { return line_; }

 private:
  std::string construct_;
  int line_;
};

/// Intra-procedural control-flow graph with a unique entry and exit.
class Cfg {
 public:
  int entry() const { return entry_; }
  int exit() const { return exit_; }
  const std::vector<CfgNode>& nodes() const { return nodes_; }
  const std::vector<CfgEdge>& edges() const { return edges_; }
  const CfgNode& node(int id) const { return nodes_.at(id); }
  CfgNode& mutable_node(int id) { return nodes_.at(id); }
  const CfgEdge& edge(int id) const { return edges_.at(id); }
  /// Outgoing / incoming edge ids. Outgoing edges are in successor order
  /// (see order_successors), incoming ones in creation order.
  const std::vector<int>& out_edges(int node) const { return out_.at(node); }
  const std::vector<int>& in_edges(int node) const { return in_.at(node); }

  int add_node(CfgNode node);
  int add_edge(int src, int dst, EdgeLabel label);
  void set_entry(int id) { entry_ = id; }
  void set_exit(int id) { exit_ = id; }

  /// Stable-sorts every node's outgoing edges so that a true edge precedes
  /// a false edge and catch edges come last. Jumps are wired after the code
  /// that follows them, so creation order alone does not guarantee this.
  void order_successors();

  /// Recomputes line ownership from node kinds and spans (see CfgNode).
  void assign_line_ownership();

  /// Returns human-readable violations of the structural invariants; empty
  /// when the graph is well formed.
  std::vector<std::string> check() const;

  /// Text dump: one `node` line per node, then one `edge` line per edge.
  std::string dump() const;

 private:
  std::vector<CfgNode> nodes_;
  std::vector<CfgEdge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  int entry_ = -1;
  int exit_ = -1;
};

/// Builds the graph of a parsed method. Unreachable statements are dropped.
/// Throws UnsupportedConstruct.
Cfg build_cfg(const MethodSnippet& snippet);

}  // namespace leakscope
