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

#include "leakscope/cfg.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <sstream>

namespace leakscope {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Entry: return "entry";
    case NodeKind::Exit: return "exit";
    case NodeKind::Statement: return "statement";
    case NodeKind::IfBranch: return "if-branch";
    case NodeKind::SwitchBranch: return "switch-branch";
    case NodeKind::LoopHeader: return "loop-header";
    case NodeKind::TryEntry: return "try-entry";
    case NodeKind::Return: return "return";
    case NodeKind::Throw: return "throw";
  }
  return "?";
}

std::string_view to_string(EdgeLabel label) {
  switch (label) {
    case EdgeLabel::Seq: return "seq";
    case EdgeLabel::True: return "true";
    case EdgeLabel::False: return "false";
    case EdgeLabel::Case: return "case";
    case EdgeLabel::LoopBody: return "loop-body";
    case EdgeLabel::LoopExit: return "loop-exit";
    case EdgeLabel::Catch: return "catch";
  }
  return "?";
}

int Cfg::add_node(CfgNode node) {
  node.id = static_cast<int>(nodes_.size());
  node.origin = node.id;
  nodes_.push_back(std::move(node));
  out_.emplace_back();
  in_.emplace_back();
  return nodes_.back().id;
}

int Cfg::add_edge(int src, int dst, EdgeLabel label) {
  const int id = static_cast<int>(edges_.size());
  edges_.push_back({id, src, dst, label});
  out_.at(src).push_back(id);
  in_.at(dst).push_back(id);
  return id;
}

void Cfg::order_successors() {
  auto rank = [this](int e) {
    switch (edges_[e].label) {
      case EdgeLabel::False:
        return 1;
      case EdgeLabel::Catch:
        return 2;
      default:
        return 0;
    }
  };
  for (auto& outs : out_) {
    std::stable_sort(outs.begin(), outs.end(), [&](int a, int b) { return rank(a) < rank(b); });
  }
}

namespace {

bool is_simple(NodeKind kind) {
  return kind == NodeKind::Statement || kind == NodeKind::Return || kind == NodeKind::Throw;
}

}  // namespace

void Cfg::assign_line_ownership() {
  // line -> (priority, origin id)
  std::map<int, std::pair<int, int>> owner;
  for (const auto& n : nodes_) {
    if (n.origin != n.id || n.kind == NodeKind::Entry || n.kind == NodeKind::Exit) continue;
    const std::pair<int, int> claim{is_simple(n.kind) ? 0 : 1, n.id};
    for (int line = n.span.first; line <= n.span.last; ++line) {
      auto [it, inserted] = owner.emplace(line, claim);
      if (!inserted && claim < it->second) it->second = claim;
    }
  }
  for (auto& n : nodes_) n.owned_lines.clear();
  for (const auto& [line, claim] : owner) nodes_[claim.second].owned_lines.push_back(line);
  for (auto& n : nodes_) {
    if (n.origin != n.id) n.owned_lines = nodes_[n.origin].owned_lines;
  }
}

std::vector<std::string> Cfg::check() const {
  std::vector<std::string> problems;
  const int n = static_cast<int>(nodes_.size());
  if (entry_ < 0 || exit_ < 0) {
    problems.push_back("missing entry or exit");
    return problems;
  }
  int entries = 0;
  int exits = 0;
  for (const auto& node : nodes_) {
    entries += node.kind == NodeKind::Entry;
    exits += node.kind == NodeKind::Exit;
  }
  if (entries != 1) problems.push_back("expected exactly one entry node");
  if (exits != 1) problems.push_back("expected exactly one exit node");
  if (!in_[entry_].empty()) problems.push_back("entry has incoming edges");
  if (!out_[exit_].empty()) problems.push_back("exit has outgoing edges");

  auto reach = [&](int start, bool forward) {
    std::vector<bool> seen(n, false);
    std::deque<int> work{start};
    seen[start] = true;
    while (!work.empty()) {
      const int v = work.front();
      work.pop_front();
      for (int e : forward ? out_[v] : in_[v]) {
        const int w = forward ? edges_[e].dst : edges_[e].src;
        if (!seen[w]) {
          seen[w] = true;
          work.push_back(w);
        }
      }
    }
    return seen;
  };
  const auto from_entry = reach(entry_, true);
  const auto to_exit = reach(exit_, false);
  for (const auto& node : nodes_) {
    const std::string where = "node " + std::to_string(node.id) + " (line " +
                              std::to_string(node.span.first) + ")";
    if (!from_entry[node.id]) problems.push_back(where + " unreachable from entry");
    if (!to_exit[node.id]) problems.push_back(where + " cannot reach exit");
    const auto& outs = out_[node.id];
    if (is_simple(node.kind) && outs.size() != 1) {
      problems.push_back(where + " must have exactly one successor");
    }
    if (node.kind == NodeKind::IfBranch) {
      if (outs.size() != 2 || edges_[outs[0]].label != EdgeLabel::True ||
          edges_[outs[1]].label != EdgeLabel::False) {
        problems.push_back(where + " must have one true and one false edge");
      }
    }
  }
  return problems;
}

std::string Cfg::dump() const {
  std::ostringstream out;
  for (const auto& n : nodes_) {
    out << "node " << n.id << ' ' << to_string(n.kind) << ' ' << n.span.first;
    if (n.span.last != n.span.first) out << '-' << n.span.last;
    if (n.in_finally) out << " finally";
    if (n.origin != n.id) out << " copy-of=" << n.origin;
    if (!n.text.empty()) out << " \"" << n.text << '"';
    out << '\n';
  }
  for (const auto& e : edges_) {
    out << "edge " << e.id << ' ' << e.src << " -> " << e.dst << ' ' << to_string(e.label)
        << '\n';
  }
  return out.str();
}

// ---- builder ---------------------------------------------------------------

namespace {

using java::Expr;
using java::ExprKind;
using java::Stmt;
using java::StmtKind;

struct Pending {
  int src;
  EdgeLabel label;
};
using Frontier = std::vector<Pending>;

void append(Frontier& into, const Frontier& from) {
  into.insert(into.end(), from.begin(), from.end());
}

// A break/continue destination. Jumps are parked in `breaks`/`continues`
// and wired once the destination node exists.
struct JumpTarget {
  enum class Kind { Loop, Switch, Label } kind;
  std::string label;
  std::size_t finally_depth;
  Frontier breaks;
  Frontier continues;
};

struct FinallyScope {
  const Stmt* block;
  std::size_t targets_depth;  // jump targets visible from the finally block
};

void find_lambda_with_control_flow(const Expr& e) {
  if (e.kind == ExprKind::Lambda && e.lambda_has_control_flow) {
    throw UnsupportedConstruct("lambda body with control flow", e.lambda_control_flow_line);
  }
  for (const auto& c : e.children) find_lambda_with_control_flow(*c);
}

class Builder {
 public:
  explicit Builder(const MethodSnippet& snippet) : snippet_(snippet) {}

  Cfg run() {
    const auto& decl = snippet_.decl();
    CfgNode entry;
    entry.kind = NodeKind::Entry;
    entry.span = {decl.first_line, decl.first_line};
    entry.text = decl.name.empty() ? "{" : decl.name;
    const int entry_id = g_.add_node(entry);
    CfgNode exit;
    exit.kind = NodeKind::Exit;
    exit.span = {decl.last_line, decl.last_line};
    exit.text = "}";
    const int exit_id = g_.add_node(exit);
    g_.set_entry(entry_id);
    g_.set_exit(exit_id);

    Frontier out = build(*decl.body, {{entry_id, EdgeLabel::Seq}});
    append(out, to_exit_);
    connect(out, exit_id);
    g_.order_successors();
    g_.assign_line_ownership();
    return std::move(g_);
  }

 private:
  int add(NodeKind kind, const Stmt& stmt, java::LineSpan span, std::string text, int role = 0) {
    CfgNode node;
    node.kind = kind;
    node.span = span;
    node.text = std::move(text);
    node.in_finally = finally_building_ > 0;
    const int id = g_.add_node(std::move(node));
    const auto key = std::make_pair(&stmt, role);
    auto [it, inserted] = origins_.emplace(key, id);
    if (!inserted) g_.mutable_node(id).origin = it->second;
    return id;
  }

  void connect(const Frontier& from, int to) {
    for (const auto& p : from) g_.add_edge(p.src, to, p.label);
  }

  static void check_exprs(const Stmt& s) {
    if (s.expr) find_lambda_with_control_flow(*s.expr);
    for (const auto& v : s.vars) {
      if (v.init) find_lambda_with_control_flow(*v.init);
    }
    for (const auto& u : s.update) find_lambda_with_control_flow(*u);
  }

  // Simple statement node chained after `in`.
  Frontier simple(NodeKind kind, const Stmt& s, const Frontier& in, int role = 0) {
    check_exprs(s);
    const int id = add(kind, s, s.span, s.text, role);
    connect(in, id);
    return {{id, EdgeLabel::Seq}};
  }

  Frontier build(const Stmt& s, Frontier in) {
    if (in.empty()) return in;  // unreachable
    switch (s.kind) {
      case StmtKind::Block: {
        for (const auto& child : s.body) {
          in = build(*child, std::move(in));
          if (in.empty()) break;
        }
        return in;
      }
      case StmtKind::Empty:
        return in;
      case StmtKind::LocalVar:
      case StmtKind::Expression:
      case StmtKind::Assert:
      case StmtKind::Yield:
      case StmtKind::LocalClass:
        return simple(NodeKind::Statement, s, in);
      case StmtKind::If:
        return build_if(s, std::move(in));
      case StmtKind::While:
      case StmtKind::ForEach:
        return build_while(s, std::move(in), take_label());
      case StmtKind::For:
        return build_for(s, std::move(in), take_label());
      case StmtKind::DoWhile:
        return build_do(s, std::move(in), take_label());
      case StmtKind::Switch:
        return build_switch(s, std::move(in), take_label());
      case StmtKind::Try:
        take_label();
        return build_try(s, std::move(in));
      case StmtKind::Labeled:
        return build_labeled(s, std::move(in));
      case StmtKind::Synchronized: {
        take_label();
        check_exprs(s);
        const int id = add(NodeKind::Statement, s, s.head, s.text);
        connect(in, id);
        return build(*s.then_branch, {{id, EdgeLabel::Seq}});
      }
      case StmtKind::Break:
      case StmtKind::Continue:
        jump(s, std::move(in));
        return {};
      case StmtKind::Return:
      case StmtKind::Throw: {
        Frontier out = simple(s.kind == StmtKind::Return ? NodeKind::Return : NodeKind::Throw, s, in);
        append(to_exit_, through_finally(std::move(out), 0));
        return {};
      }
    }
    return in;
  }

  std::string take_label() {
    std::string label = std::move(pending_label_);
    pending_label_.clear();
    return label;
  }

  Frontier build_if(const Stmt& s, Frontier in) {
    check_exprs(s);
    const int id = add(NodeKind::IfBranch, s, s.head, s.text);
    connect(in, id);
    Frontier out = build(*s.then_branch, {{id, EdgeLabel::True}});
    if (s.else_branch) {
      append(out, build(*s.else_branch, {{id, EdgeLabel::False}}));
    } else {
      out.push_back({id, EdgeLabel::False});
    }
    return out;
  }

  JumpTarget& push_target(JumpTarget::Kind kind, std::string label) {
    targets_.push_back({kind, std::move(label), finally_.size(), {}, {}});
    return targets_.back();
  }

  JumpTarget pop_target() {
    JumpTarget t = std::move(targets_.back());
    targets_.pop_back();
    return t;
  }

  Frontier build_while(const Stmt& s, Frontier in, std::string label) {
    check_exprs(s);
    if (s.kind == StmtKind::ForEach && s.vars.front().init) {
      find_lambda_with_control_flow(*s.vars.front().init);
    }
    const int header = add(NodeKind::LoopHeader, s, s.head, s.text);
    connect(in, header);
    push_target(JumpTarget::Kind::Loop, std::move(label));
    Frontier body = build(*s.then_branch, {{header, EdgeLabel::LoopBody}});
    JumpTarget t = pop_target();
    append(body, t.continues);
    connect(body, header);
    Frontier out{{header, EdgeLabel::LoopExit}};
    append(out, t.breaks);
    return out;
  }

  Frontier build_for(const Stmt& s, Frontier in, std::string label) {
    for (const auto& init : s.init) in = simple(NodeKind::Statement, *init, in);
    if (s.expr) find_lambda_with_control_flow(*s.expr);
    const int header = add(NodeKind::LoopHeader, s, s.head, s.text);
    connect(in, header);
    push_target(JumpTarget::Kind::Loop, std::move(label));
    Frontier body = build(*s.then_branch, {{header, EdgeLabel::LoopBody}});
    JumpTarget t = pop_target();
    append(body, t.continues);
    if (!s.update.empty() && !body.empty()) {
      for (const auto& u : s.update) find_lambda_with_control_flow(*u);
      const int update = add(NodeKind::Statement, s, s.update_span, "for-update", /*role=*/1);
      connect(body, update);
      body = {{update, EdgeLabel::Seq}};
    }
    connect(body, header);
    Frontier out{{header, EdgeLabel::LoopExit}};
    append(out, t.breaks);
    return out;
  }

  Frontier build_do(const Stmt& s, Frontier in, std::string label) {
    check_exprs(s);
    const int first_body_node = static_cast<int>(g_.nodes().size());
    push_target(JumpTarget::Kind::Loop, std::move(label));
    Frontier body = build(*s.then_branch, std::move(in));
    JumpTarget t = pop_target();
    append(body, t.continues);
    Frontier out;
    if (!body.empty()) {
      const int header = add(NodeKind::LoopHeader, s, s.head, s.text);
      g_.mutable_node(header).do_while = true;
      connect(body, header);
      const bool has_body = first_body_node < header;
      g_.add_edge(header, has_body ? first_body_node : header, EdgeLabel::LoopBody);
      out.push_back({header, EdgeLabel::LoopExit});
    }
    append(out, t.breaks);
    return out;
  }

  Frontier build_switch(const Stmt& s, Frontier in, std::string label) {
    check_exprs(s);
    const int id = add(NodeKind::SwitchBranch, s, s.head, s.text);
    connect(in, id);
    push_target(JumpTarget::Kind::Switch, std::move(label));
    Frontier out;
    Frontier fallthrough;
    bool has_default = false;
    for (const auto& group : s.groups) {
      has_default = has_default || group.is_default;
      Frontier entry{{id, EdgeLabel::Case}};
      if (!group.arrow) append(entry, fallthrough);
      fallthrough.clear();
      Frontier cur = std::move(entry);
      for (const auto& stmt : group.body) {
        cur = build(*stmt, std::move(cur));
        if (cur.empty()) break;
      }
      if (group.arrow) {
        append(out, cur);
      } else {
        fallthrough = std::move(cur);
      }
    }
    append(out, fallthrough);
    if (!has_default) out.push_back({id, EdgeLabel::Case});
    JumpTarget t = pop_target();
    append(out, t.breaks);
    return out;
  }

  Frontier build_labeled(const Stmt& s, Frontier in) {
    const Stmt& inner = *s.then_branch;
    switch (inner.kind) {
      case StmtKind::While:
      case StmtKind::ForEach:
      case StmtKind::For:
      case StmtKind::DoWhile:
      case StmtKind::Switch:
        pending_label_ = s.label;
        return build(inner, std::move(in));
      default:
        break;
    }
    push_target(JumpTarget::Kind::Label, s.label);
    Frontier out = build(inner, std::move(in));
    JumpTarget t = pop_target();
    append(out, t.breaks);
    return out;
  }

  void jump(const Stmt& s, Frontier in) {
    const bool is_break = s.kind == StmtKind::Break;
    for (auto it = targets_.rbegin(); it != targets_.rend(); ++it) {
      const bool match = s.label.empty()
                             ? (it->kind == JumpTarget::Kind::Loop ||
                                (is_break && it->kind == JumpTarget::Kind::Switch))
                             : it->label == s.label;
      if (!match) continue;
      if (!is_break && it->kind != JumpTarget::Kind::Loop) {
        throw UnsupportedConstruct("continue to a non-loop label", s.span.first);
      }
      const std::size_t index = static_cast<std::size_t>(targets_.rend() - it) - 1;
      Frontier routed = through_finally(std::move(in), it->finally_depth);
      // through_finally may have reallocated targets_; index again.
      append(is_break ? targets_[index].breaks : targets_[index].continues, routed);
      return;
    }
    throw UnsupportedConstruct(is_break ? "break outside loop or switch" : "continue outside loop",
                               s.span.first);
  }

  // Threads `in` through copies of every finally block entered since
  // `depth`, innermost first.
  Frontier through_finally(Frontier in, std::size_t depth) {
    for (std::size_t i = finally_.size(); i > depth && !in.empty(); --i) {
      const FinallyScope scope = finally_[i - 1];
      // Jumps inside the finally block resolve against the targets that
      // enclose the try statement, not those inside its body.
      std::vector<FinallyScope> saved_finally(finally_.begin() + (i - 1), finally_.end());
      finally_.resize(i - 1);
      std::vector<JumpTarget> saved_targets(
          std::make_move_iterator(targets_.begin() + scope.targets_depth),
          std::make_move_iterator(targets_.end()));
      targets_.resize(scope.targets_depth);
      ++finally_building_;
      in = build(*scope.block, std::move(in));
      --finally_building_;
      for (auto& t : saved_targets) targets_.push_back(std::move(t));
      finally_.insert(finally_.end(), saved_finally.begin(), saved_finally.end());
    }
    return in;
  }

  Frontier build_try(const Stmt& s, Frontier in) {
    const int id = add(NodeKind::TryEntry, s, s.head, s.text);
    connect(in, id);
    Frontier cur{{id, EdgeLabel::Seq}};
    for (const auto& r : s.resources) cur = simple(NodeKind::Statement, *r, cur);
    if (s.finally_block) finally_.push_back({s.finally_block.get(), targets_.size()});
    Frontier normal = build(*s.then_branch, std::move(cur));
    for (const auto& c : s.catches) {
      append(normal, build(*c.body, {{id, EdgeLabel::Catch}}));
    }
    if (!s.finally_block) return normal;
    finally_.pop_back();
    ++finally_building_;
    Frontier out = build(*s.finally_block, std::move(normal));
    --finally_building_;
    return out;
  }

  const MethodSnippet& snippet_;
  Cfg g_;
  Frontier to_exit_;
  std::vector<JumpTarget> targets_;
  std::vector<FinallyScope> finally_;
  int finally_building_ = 0;
  std::string pending_label_;
  std::map<std::pair<const Stmt*, int>, int> origins_;
};

}  // namespace

Cfg build_cfg(const MethodSnippet& snippet) { return Builder(snippet).run(); }

}  // namespace leakscope
