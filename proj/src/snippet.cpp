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

#include "leakscope/snippet.hpp"

#include <algorithm>

#include "leakscope/hash.hpp"
#include "leakscope/intent.hpp"
#include "leakscope/java_parser.hpp"

namespace leakscope {

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string line(text.substr(start, nl - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = nl + 1;
  }
  while (lines.size() > 1 && lines.back().empty()) lines.pop_back();
  return lines;
}

}  // namespace

bool MethodSnippet::is_declared_resource(std::string_view var) const {
  return std::any_of(declared_resources_.begin(), declared_resources_.end(),
                     [&, name = normalize_var(var)](const DeclaredResource& r) {
                       return r.var == name;
                     });
}

std::string MethodSnippet::numbered_code() const {
  std::string out;
  for (std::size_t i = 0; i < lines_.size(); ++i) {
    out += std::to_string(first_line_ + static_cast<int>(i));
    out += ": ";
    out += lines_[i];
    out += '\n';
  }
  return out;
}

std::string MethodSnippet::line_text(int lineno) const {
  const int index = lineno - first_line_;
  if (index < 0 || index >= static_cast<int>(lines_.size())) return {};
  return lines_[index];
}

std::optional<std::string> MethodSnippet::declared_type(std::string_view var) const {
  for (const auto& p : decl_->params) {
    if (p.name == var) return p.type_text;
  }
  std::optional<std::string> found;
  for_each_stmt(*decl_->body, [&](const java::Stmt& s) {
    if (found) return;
    if (s.kind == java::StmtKind::LocalVar || s.kind == java::StmtKind::ForEach) {
      for (const auto& v : s.vars) {
        if (v.name == var) found = s.type_text;
      }
    }
    for (const auto& c : s.catches) {
      if (!found && c.name == var) found = c.type_text;
    }
  });
  return found;
}

MethodSnippet parse_method(std::string source, int first_line, std::string method_id) {
  if (first_line < 1) throw SyntaxError(first_line, "first line must be >= 1");
  MethodSnippet snippet;
  auto decl = std::make_shared<java::MethodDecl>(java::parse_method_decl(source, first_line));

  for_each_stmt(*decl->body, [&](const java::Stmt& s) {
    if (s.kind != java::StmtKind::Try) return;
    for (const auto& r : s.resources) {
      if (r->kind == java::StmtKind::LocalVar) {
        for (const auto& v : r->vars) snippet.declared_resources_.push_back({v.name, v.line});
      } else if (r->expr && r->expr->kind == java::ExprKind::Name) {
        // Java 9 form: an effectively final variable named in the header.
        snippet.declared_resources_.push_back({r->expr->text, r->expr->line});
      } else if (r->expr && r->expr->kind == java::ExprKind::FieldAccess &&
                 !r->expr->children.empty() &&
                 r->expr->children.front()->kind == java::ExprKind::This) {
        snippet.declared_resources_.push_back({r->expr->text, r->expr->line});
      }
    }
  });

  snippet.lines_ = split_lines(source);
  snippet.first_line_ = first_line;
  snippet.last_line_ = first_line + static_cast<int>(snippet.lines_.size()) - 1;
  snippet.hash_ = sha256_hex(source);
  snippet.method_id_ = method_id.empty() ? decl->name : std::move(method_id);
  snippet.decl_ = std::move(decl);
  snippet.source_ = std::move(source);
  return snippet;
}

}  // namespace leakscope
