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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leakscope/java_ast.hpp"
#include "leakscope/java_lexer.hpp"

namespace leakscope {

using java::SyntaxError;

/// A variable introduced by a try-with-resources header.
struct DeclaredResource {
  std::string var;
  int line = 0;
};

/// One parsed Java method. Line numbers everywhere are original file lines.
///
/// Immutable once built; copies share the syntax tree.
class MethodSnippet {
 public:
  const std::string& source() const { return source_; }
  int first_line() const { return first_line_; }
  int last_line() const { return last_line_; }
  /// Method name, or empty for a lone body block.
  const std::string& name() const { return decl_->name; }
  /// Caller-supplied identifier, e.g. `Foo.java:Foo.bar:12`.
  const std::string& method_id() const { return method_id_; }
  const java::MethodDecl& decl() const { return *decl_; }
  const std::vector<DeclaredResource>& declared_resources() const {
    return declared_resources_;
  }
  bool is_declared_resource(std::string_view var) const;
  /// SHA-256 of the source text.
  const std::string& hash() const { return hash_; }

  /// Source with "N: " prefixes, one line per source line.
  std::string numbered_code() const;
  /// Text of one source line, without the newline; empty when out of range.
  std::string line_text(int lineno) const;

  /// Declared type of a local variable or parameter named `var`, if any.
  std::optional<std::string> declared_type(std::string_view var) const;

 private:
  friend MethodSnippet parse_method(std::string source, int first_line,
                                    std::string method_id);

  std::string source_;
  int first_line_ = 1;
  int last_line_ = 1;
  std::string method_id_;
  std::shared_ptr<const java::MethodDecl> decl_;
  std::vector<DeclaredResource> declared_resources_;
  std::vector<std::string> lines_;
  std::string hash_;
};

/// Parses one method declaration (or a lone body block) whose text starts on
/// `first_line` of its file. Throws SyntaxError naming the offending line.
MethodSnippet parse_method(std::string source, int first_line = 1,
                           std::string method_id = {});

/// Calls `fn` for every statement in `stmt`, depth first, in source order.
template <typename Fn>
void for_each_stmt(const java::Stmt& stmt, Fn&& fn) {
  fn(stmt);
  for (const auto& s : stmt.body) for_each_stmt(*s, fn);
  for (const auto& s : stmt.init) for_each_stmt(*s, fn);
  for (const auto& s : stmt.resources) for_each_stmt(*s, fn);
  if (stmt.then_branch) for_each_stmt(*stmt.then_branch, fn);
  if (stmt.else_branch) for_each_stmt(*stmt.else_branch, fn);
  for (const auto& g : stmt.groups) {
    for (const auto& s : g.body) for_each_stmt(*s, fn);
  }
  for (const auto& c : stmt.catches) for_each_stmt(*c.body, fn);
  if (stmt.finally_block) for_each_stmt(*stmt.finally_block, fn);
}

}  // namespace leakscope
