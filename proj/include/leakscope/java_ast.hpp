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

#include <memory>
#include <string>
#include <vector>

namespace leakscope::java {

// Syntax tree for a single Java method. Expressions are kept only to the
// depth the analyses need; class bodies of anonymous and local classes are
// opaque.

enum class ExprKind {
  Name,
  FieldAccess,
  Call,
  New,
  Literal,
  Null,
  This,
  Super,
  Binary,
  Unary,
  Postfix,
  Assign,
  Conditional,
  Cast,
  InstanceOf,
  Lambda,
  MethodRef,
  ArrayAccess,
  ArrayNew,
  ArrayInit,
  ClassLiteral,
  SwitchExpr,
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  ExprKind kind = ExprKind::Literal;
  // Line of the principal token: method name for calls, `new` for
  // creations, the operator for binaries.
  int line = 0;
  int first_line = 0;
  int last_line = 0;
  // Identifier, field or method name, operator, literal text, or type text.
  std::string text;
  // Call: receiver (when has_receiver) followed by arguments.
  // New: constructor arguments. Binary/Assign: lhs, rhs. Conditional: c, a, b.
  std::vector<ExprPtr> children;
  bool has_receiver = false;
  bool has_class_body = false;
  // Lambda with a block body containing branching, loops, or jumps.
  bool lambda_has_control_flow = false;
  int lambda_control_flow_line = 0;

  const Expr* receiver() const {
    return has_receiver && !children.empty() ? children.front().get() : nullptr;
  }
};

enum class StmtKind {
  Block,
  LocalVar,
  Expression,
  If,
  While,
  DoWhile,
  For,
  ForEach,
  Switch,
  Break,
  Continue,
  Return,
  Throw,
  Try,
  Labeled,
  Synchronized,
  Empty,
  LocalClass,
  Assert,
  Yield,
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct LineSpan {
  int first = 0;
  int last = 0;
};

struct VarDeclarator {
  std::string name;
  int line = 0;
  ExprPtr init;
};

struct SwitchGroup {
  std::vector<std::string> labels;
  bool is_default = false;
  bool arrow = false;
  int line = 0;
  std::vector<StmtPtr> body;
};

struct CatchClause {
  std::string type_text;
  std::string name;
  int line = 0;
  StmtPtr body;
};

struct Stmt {
  StmtKind kind = StmtKind::Empty;
  LineSpan span;  // whole statement
  LineSpan head;  // condition / header part for compound statements
  std::string text;  // abbreviated source text, for dumps
  std::string label;  // Labeled, Break, Continue
  std::string type_text;  // LocalVar, ForEach
  std::vector<VarDeclarator> vars;  // LocalVar, ForEach
  ExprPtr expr;  // condition, selector, value, or expression
  std::vector<StmtPtr> body;  // Block statements
  StmtPtr then_branch;  // If then-part, loop body, Labeled/Synchronized body
  StmtPtr else_branch;
  // For
  std::vector<StmtPtr> init;
  std::vector<ExprPtr> update;
  LineSpan init_span;
  LineSpan cond_span;
  LineSpan update_span;
  // Switch
  std::vector<SwitchGroup> groups;
  // Try
  std::vector<StmtPtr> resources;
  std::vector<CatchClause> catches;
  StmtPtr finally_block;
};

struct Parameter {
  std::string type_text;
  std::string name;
  int line = 0;
};

struct MethodDecl {
  std::string name;  // empty for a lone body block
  std::string return_type;
  std::vector<Parameter> params;
  int first_line = 0;
  int last_line = 0;
  bool is_lone_block = false;
  StmtPtr body;
};

}  // namespace leakscope::java
