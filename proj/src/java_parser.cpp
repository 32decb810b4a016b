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

#include "leakscope/java_parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

namespace leakscope::java {

namespace {

constexpr std::array<std::string_view, 9> kPrimitiveTypes = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "void"};

constexpr std::array<std::string_view, 14> kModifiers = {
    "public",    "protected", "private",  "static",   "final",
    "abstract",  "native",    "synchronized", "transient", "volatile",
    "strictfp",  "default",   "sealed",   "non"};

bool is_primitive(std::string_view word) {
  return std::find(kPrimitiveTypes.begin(), kPrimitiveTypes.end(), word) !=
         kPrimitiveTypes.end();
}

bool is_modifier(std::string_view word) {
  return std::find(kModifiers.begin(), kModifiers.end(), word) != kModifiers.end();
}

std::string abbreviate(std::string_view text, std::size_t limit = 60) {
  std::string out;
  bool space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  if (out.size() > limit) out = out.substr(0, limit - 3) + "...";
  return out;
}

struct BinaryOp {
  std::string text;
  int tokens = 0;
  int precedence = 0;
};

class Parser {
 public:
  Parser(std::string_view src, int first_line)
      : src_(src), toks_(tokenize(src, first_line)) {}

  MethodDecl method() {
    MethodDecl decl;
    if (at_op("{")) {
      decl.is_lone_block = true;
      decl.body = block();
      decl.first_line = decl.body->span.first;
      decl.last_line = decl.body->span.last;
      expect_end();
      return decl;
    }
    decl.first_line = tok().line;
    skip_modifiers(/*member=*/true);
    if (at_op("<")) skip_angle_brackets();
    if (tok().kind == TokenKind::Identifier && at_op("(", 1)) {
      decl.name = expect_ident("constructor name");
    } else {
      decl.return_type = type();
      decl.name = expect_ident("method name");
    }
    expect_op("(");
    if (!at_op(")")) {
      do {
        decl.params.push_back(parameter());
      } while (accept_op(","));
    }
    expect_op(")");
    skip_dims();
    if (accept_word("throws")) {
      do {
        type();
      } while (accept_op(","));
    }
    if (at_op(";")) fail("method has no body");
    if (!at_op("{")) fail("expected method body");
    decl.body = block();
    decl.last_line = decl.body->span.last;
    expect_end();
    return decl;
  }

 private:
  // ---- token helpers -------------------------------------------------------

  const Token& tok(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool at_op(std::string_view s, std::size_t k = 0) const {
    const Token& t = tok(k);
    return t.kind == TokenKind::Operator && t.text == s;
  }
  bool at_word(std::string_view s, std::size_t k = 0) const {
    const Token& t = tok(k);
    return t.kind == TokenKind::Identifier && t.text == s;
  }
  bool at_ident(std::size_t k = 0) const {
    const Token& t = tok(k);
    return t.kind == TokenKind::Identifier && !is_reserved_word(t.text);
  }
  bool accept_op(std::string_view s) {
    if (!at_op(s)) return false;
    ++pos_;
    return true;
  }
  bool accept_word(std::string_view s) {
    if (!at_word(s)) return false;
    ++pos_;
    return true;
  }
  const Token& expect_op(std::string_view s) {
    if (!at_op(s)) fail("expected '" + std::string(s) + "'");
    return toks_[pos_++];
  }
  void expect_word(std::string_view s) {
    if (!at_word(s)) fail("expected '" + std::string(s) + "'");
    ++pos_;
  }
  std::string expect_ident(std::string_view what) {
    if (!at_ident()) fail("expected " + std::string(what));
    return toks_[pos_++].text;
  }
  void expect_end() {
    if (tok().kind != TokenKind::End) fail("unexpected tokens after method body");
  }
  bool adjacent(std::size_t k) const { return tok(k).end == tok(k + 1).begin; }
  int prev_line() const { return pos_ == 0 ? tok().line : toks_[pos_ - 1].line; }
  std::size_t prev_end() const { return pos_ == 0 ? 0 : toks_[pos_ - 1].end; }

  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = tok();
    const std::string found =
        t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(t.line, message + " but found " + found);
  }

  std::string source_text(std::size_t begin, std::size_t end) const {
    return abbreviate(src_.substr(begin, end > begin ? end - begin : 0));
  }

  // Skips a balanced (), [] or {} group starting at the current token.
  void skip_balanced() {
    const std::string open = tok().text;
    const std::string close = open == "(" ? ")" : open == "[" ? "]" : "}";
    const int line = tok().line;
    int depth = 0;
    do {
      if (tok().kind == TokenKind::End) throw SyntaxError(line, "unbalanced '" + open + "'");
      if (at_op(open)) ++depth;
      if (at_op(close)) --depth;
      ++pos_;
    } while (depth > 0);
  }

  void skip_angle_brackets() {
    int depth = 0;
    do {
      if (tok().kind == TokenKind::End) fail("unbalanced '<'");
      if (at_op("<")) ++depth;
      if (at_op(">")) --depth;
      ++pos_;
    } while (depth > 0);
  }

  void annotation() {
    expect_op("@");
    expect_ident("annotation name");
    while (at_op(".") && at_ident(1)) pos_ += 2;
    if (at_op("(")) skip_balanced();
  }

  void skip_modifiers(bool member) {
    while (true) {
      if (at_op("@") && !at_word("interface", 1)) {
        annotation();
      } else if (member && tok().kind == TokenKind::Identifier && is_modifier(tok().text) &&
                 !(tok().text == "non" && !at_op("-", 1))) {
        if (tok().text == "non") pos_ += 2;  // non-sealed
        ++pos_;
      } else if (!member && at_word("final")) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  void skip_dims() {
    while (true) {
      std::size_t k = 0;
      while (at_op("@", k)) {
        // annotations on dimensions are rare; accept a bare name only
        k += 2;
      }
      if (at_op("[", k) && at_op("]", k + 1)) {
        pos_ += k + 2;
      } else {
        return;
      }
    }
  }

  // ---- types ---------------------------------------------------------------

  void type_arguments() {
    expect_op("<");
    if (accept_op(">")) return;  // diamond
    do {
      while (at_op("@")) annotation();
      if (accept_op("?")) {
        if (accept_word("extends") || accept_word("super")) type();
      } else {
        type();
      }
    } while (accept_op(","));
    expect_op(">");
  }

  std::string type_without_dims() {
    const std::size_t begin = tok().begin;
    while (at_op("@")) annotation();
    if (tok().kind == TokenKind::Identifier && is_primitive(tok().text)) {
      ++pos_;
    } else {
      expect_ident("type");
      if (at_op("<")) type_arguments();
      while (at_op(".") && (at_ident(1) || at_op("@", 1))) {
        ++pos_;
        while (at_op("@")) annotation();
        expect_ident("type");
        if (at_op("<")) type_arguments();
      }
    }
    return std::string(src_.substr(begin, prev_end() - begin));
  }

  std::string type() {
    const std::size_t begin = tok().begin;
    type_without_dims();
    skip_dims();
    return abbreviate(src_.substr(begin, prev_end() - begin), 200);
  }

  Parameter parameter() {
    Parameter p;
    skip_modifiers(/*member=*/false);
    p.type_text = type();
    accept_op("...");
    p.line = tok().line;
    if (accept_word("this")) {
      p.name = "this";
    } else {
      p.name = expect_ident("parameter name");
    }
    skip_dims();
    return p;
  }

  // ---- expressions ---------------------------------------------------------

  ExprPtr make(ExprKind kind, int line, std::string text = {}) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->line = e->first_line = line;
    e->last_line = line;
    e->text = std::move(text);
    return e;
  }

  void finish(Expr& e) const { e.last_line = std::max(e.last_line, prev_line()); }

  // Composite operator starting with '>' built from adjacent single tokens.
  std::pair<std::string, int> greater_op() const {
    if (!at_op(">")) return {"", 0};
    if (at_op(">", 1) && adjacent(0)) {
      if (at_op(">", 2) && adjacent(1)) {
        if (at_op("=", 3) && adjacent(2)) return {">>>=", 4};
        return {">>>", 3};
      }
      if (at_op("=", 2) && adjacent(1)) return {">>=", 3};
      return {">>", 2};
    }
    if (at_op("=", 1) && adjacent(0)) return {">=", 2};
    return {">", 1};
  }

  BinaryOp binary_op() const {
    const Token& t = tok();
    if (t.kind == TokenKind::Identifier && t.text == "instanceof") return {"instanceof", 1, 7};
    if (t.kind != TokenKind::Operator) return {};
    if (t.text == ">") {
      auto [op, n] = greater_op();
      if (op == ">" || op == ">=") return {op, n, 7};
      if (op == ">>" || op == ">>>") return {op, n, 8};
      return {};
    }
    static const std::array<std::pair<std::string_view, int>, 16> kOps = {{
        {"||", 1}, {"&&", 2}, {"|", 3}, {"^", 4}, {"&", 5}, {"==", 6},
        {"!=", 6}, {"<", 7}, {"<=", 7}, {"<<", 8}, {"+", 9}, {"-", 9},
        {"*", 10}, {"/", 10}, {"%", 10}, {"", 0}}};
    for (const auto& [op, prec] : kOps) {
      if (!op.empty() && t.text == op) return {std::string(op), 1, prec};
    }
    return {};
  }

  std::pair<std::string, int> assign_op() const {
    const Token& t = tok();
    if (t.kind != TokenKind::Operator) return {"", 0};
    if (t.text == ">") {
      auto [op, n] = greater_op();
      if (op == ">>=" || op == ">>>=") return {op, n};
      return {"", 0};
    }
    static constexpr std::array<std::string_view, 10> kAssign = {
        "=", "+=", "-=", "*=", "/=", "&=", "|=", "^=", "%=", "<<="};
    if (std::find(kAssign.begin(), kAssign.end(), t.text) != kAssign.end()) {
      return {t.text, 1};
    }
    return {"", 0};
  }

  bool lambda_ahead() const {
    if (at_ident() && at_op("->", 1)) return true;
    if (!at_op("(")) return false;
    int depth = 0;
    for (std::size_t k = 0;; ++k) {
      const Token& t = tok(k);
      if (t.kind == TokenKind::End) return false;
      if (at_op("(", k)) ++depth;
      if (at_op(")", k) && --depth == 0) return at_op("->", k + 1);
    }
  }

  ExprPtr expression() {
    if (lambda_ahead()) return lambda();
    auto lhs = conditional();
    auto [op, n] = assign_op();
    if (n == 0) return lhs;
    auto e = make(ExprKind::Assign, tok().line, op);
    e->first_line = lhs->first_line;
    pos_ += n;
    e->children.push_back(std::move(lhs));
    e->children.push_back(expression());
    finish(*e);
    return e;
  }

  ExprPtr lambda() {
    auto e = make(ExprKind::Lambda, tok().line);
    if (at_op("(")) {
      skip_balanced();
    } else {
      ++pos_;
    }
    expect_op("->");
    if (at_op("{")) {
      auto body = block();
      int line = 0;
      if (lambda_block_has_control_flow(*body, &line)) {
        e->lambda_has_control_flow = true;
        e->lambda_control_flow_line = line;
      }
    } else {
      e->children.push_back(expression());
    }
    finish(*e);
    return e;
  }

  static bool lambda_block_has_control_flow(const Stmt& block, int* line) {
    for (std::size_t i = 0; i < block.body.size(); ++i) {
      const Stmt& s = *block.body[i];
      const bool trailing_return = s.kind == StmtKind::Return && i + 1 == block.body.size();
      if (trailing_return) continue;
      switch (s.kind) {
        case StmtKind::LocalVar:
        case StmtKind::Expression:
        case StmtKind::Empty:
        case StmtKind::LocalClass:
        case StmtKind::Assert:
          break;
        default:
          *line = s.span.first;
          return true;
      }
    }
    return false;
  }

  ExprPtr conditional() {
    auto c = binary(1);
    if (!at_op("?")) return c;
    auto e = make(ExprKind::Conditional, tok().line, "?:");
    e->first_line = c->first_line;
    ++pos_;
    e->children.push_back(std::move(c));
    e->children.push_back(expression());
    expect_op(":");
    e->children.push_back(lambda_ahead() ? lambda() : conditional());
    finish(*e);
    return e;
  }

  ExprPtr binary(int min_prec) {
    auto lhs = unary();
    while (true) {
      const BinaryOp op = binary_op();
      if (op.tokens == 0 || op.precedence < min_prec) break;
      const int line = tok().line;
      pos_ += op.tokens;
      if (op.text == "instanceof") {
        auto e = make(ExprKind::InstanceOf, line);
        e->first_line = lhs->first_line;
        accept_word("final");
        e->text = type();
        if (at_ident()) ++pos_;  // pattern binding
        else if (at_op("(")) skip_balanced();  // record pattern
        e->children.push_back(std::move(lhs));
        finish(*e);
        lhs = std::move(e);
        continue;
      }
      auto e = make(ExprKind::Binary, line, op.text);
      e->first_line = lhs->first_line;
      e->children.push_back(std::move(lhs));
      e->children.push_back(binary(op.precedence + 1));
      finish(*e);
      lhs = std::move(e);
    }
    return lhs;
  }

  ExprPtr unary() {
    const Token& t = tok();
    if (t.kind == TokenKind::Operator &&
        (t.text == "++" || t.text == "--" || t.text == "+" || t.text == "-" ||
         t.text == "!" || t.text == "~")) {
      auto e = make(ExprKind::Unary, t.line, t.text);
      ++pos_;
      e->children.push_back(unary());
      finish(*e);
      return e;
    }
    if (at_op("(")) {
      if (auto cast = try_cast()) return cast;
    }
    return postfix(primary());
  }

  bool starts_cast_operand(bool primitive) const {
    const Token& t = tok();
    switch (t.kind) {
      case TokenKind::Number:
      case TokenKind::String:
      case TokenKind::Char:
        return true;
      case TokenKind::Identifier:
        return !is_reserved_word(t.text) || t.text == "this" || t.text == "super" ||
               t.text == "new" || t.text == "true" || t.text == "false" ||
               t.text == "null" || t.text == "switch" || is_primitive(t.text);
      case TokenKind::Operator:
        if (t.text == "(" || t.text == "!" || t.text == "~") return true;
        return primitive && (t.text == "+" || t.text == "-" || t.text == "++" ||
                             t.text == "--");
      case TokenKind::End:
        return false;
    }
    return false;
  }

  ExprPtr try_cast() {
    const std::size_t saved = pos_;
    const int line = tok().line;
    ++pos_;
    std::string text;
    try {
      text = type();
      while (at_op("&")) {  // intersection cast
        ++pos_;
        text += " & " + type();
      }
    } catch (const SyntaxError&) {
      pos_ = saved;
      return nullptr;
    }
    if (!at_op(")")) {
      pos_ = saved;
      return nullptr;
    }
    ++pos_;
    const bool primitive = is_primitive(text);
    if (!starts_cast_operand(primitive)) {
      pos_ = saved;
      return nullptr;
    }
    auto e = make(ExprKind::Cast, line, text);
    e->children.push_back(lambda_ahead() ? lambda() : unary());
    finish(*e);
    return e;
  }

  ExprPtr postfix(ExprPtr e) {
    while (at_op("++") || at_op("--")) {
      auto p = make(ExprKind::Postfix, tok().line, tok().text);
      p->first_line = e->first_line;
      ++pos_;
      p->children.push_back(std::move(e));
      finish(*p);
      e = std::move(p);
    }
    return e;
  }

  void arguments(Expr& call) {
    expect_op("(");
    if (!accept_op(")")) {
      do {
        call.children.push_back(expression());
      } while (accept_op(","));
      expect_op(")");
    }
  }

  ExprPtr array_initializer() {
    auto e = make(ExprKind::ArrayInit, tok().line);
    expect_op("{");
    while (!at_op("}")) {
      e->children.push_back(at_op("{") ? array_initializer() : expression());
      if (!accept_op(",")) break;
    }
    expect_op("}");
    finish(*e);
    return e;
  }

  ExprPtr creator() {
    const int line = tok().line;
    expect_word("new");
    if (at_op("<")) type_arguments();
    std::string text = type_without_dims();
    if (at_op("[")) {
      auto e = make(ExprKind::ArrayNew, line, text);
      while (at_op("[")) {
        ++pos_;
        if (!accept_op("]")) {
          e->children.push_back(expression());
          expect_op("]");
        }
      }
      if (at_op("{")) e->children.push_back(array_initializer());
      finish(*e);
      return e;
    }
    auto e = make(ExprKind::New, line, text);
    arguments(*e);
    if (at_op("{")) {
      skip_balanced();
      e->has_class_body = true;
    }
    finish(*e);
    return e;
  }

  ExprPtr primary() {
    const Token& t = tok();
    const int line = t.line;
    switch (t.kind) {
      case TokenKind::Number:
      case TokenKind::String:
      case TokenKind::Char: {
        auto e = make(ExprKind::Literal, line, t.text);
        ++pos_;
        return selectors(std::move(e));
      }
      case TokenKind::End:
        fail("expected expression");
      case TokenKind::Operator:
        if (t.text == "(") {
          ++pos_;
          auto inner = expression();
          expect_op(")");
          inner->first_line = std::min(inner->first_line, line);
          finish(*inner);
          return selectors(std::move(inner));
        }
        fail("expected expression");
      case TokenKind::Identifier:
        break;
    }
    const std::string word = t.text;
    if (word == "true" || word == "false") {
      ++pos_;
      return selectors(make(ExprKind::Literal, line, word));
    }
    if (word == "null") {
      ++pos_;
      return selectors(make(ExprKind::Null, line, word));
    }
    if (word == "this" || word == "super") {
      ++pos_;
      if (at_op("(")) {  // explicit constructor invocation
        auto call = make(ExprKind::Call, line, word);
        arguments(*call);
        finish(*call);
        return call;
      }
      return selectors(make(word == "this" ? ExprKind::This : ExprKind::Super, line, word));
    }
    if (word == "new") return selectors(creator());
    if (word == "switch") {
      auto e = make(ExprKind::SwitchExpr, line, "switch");
      ++pos_;
      expect_op("(");
      e->children.push_back(expression());
      expect_op(")");
      if (!at_op("{")) fail("expected '{'");
      skip_balanced();
      finish(*e);
      return selectors(std::move(e));
    }
    if (is_primitive(word) || (at_ident() && at_op("[", 1) && at_op("]", 2))) {
      std::string text = type();
      if (accept_op("::")) {
        auto e = make(ExprKind::MethodRef, line, at_word("new") ? "new" : "");
        if (!accept_word("new")) e->text = expect_ident("method name");
        return e;
      }
      expect_op(".");
      expect_word("class");
      return selectors(make(ExprKind::ClassLiteral, line, text));
    }
    if (!at_ident()) fail("expected expression");
    ++pos_;
    if (at_op("(")) {
      auto call = make(ExprKind::Call, line, word);
      arguments(*call);
      finish(*call);
      return selectors(std::move(call));
    }
    return selectors(make(ExprKind::Name, line, word));
  }

  ExprPtr selectors(ExprPtr e) {
    while (true) {
      if (at_op(".")) {
        ++pos_;
        if (at_word("new")) {
          auto inner = creator();
          inner->first_line = e->first_line;
          inner->has_receiver = false;
          e = std::move(inner);
          continue;
        }
        if (at_op("<")) type_arguments();
        const int line = tok().line;
        if (accept_word("class")) {
          auto c = make(ExprKind::ClassLiteral, line, "class");
          c->first_line = e->first_line;
          c->children.push_back(std::move(e));
          e = std::move(c);
          continue;
        }
        if (at_word("this") || at_word("super")) {
          const bool is_this = at_word("this");
          ++pos_;
          auto q = make(is_this ? ExprKind::This : ExprKind::Super, line, is_this ? "this" : "super");
          q->first_line = e->first_line;
          if (at_op("(")) {  // Outer.super(...) / qualified constructor call
            auto call = make(ExprKind::Call, line, q->text);
            arguments(*call);
            finish(*call);
            e = std::move(call);
            continue;
          }
          e = std::move(q);
          continue;
        }
        std::string name = expect_ident("member name");
        if (at_op("(")) {
          auto call = make(ExprKind::Call, line, name);
          call->first_line = e->first_line;
          call->has_receiver = true;
          call->children.push_back(std::move(e));
          arguments(*call);
          finish(*call);
          e = std::move(call);
        } else {
          auto f = make(ExprKind::FieldAccess, line, name);
          f->first_line = e->first_line;
          f->children.push_back(std::move(e));
          e = std::move(f);
        }
      } else if (at_op("[")) {
        auto a = make(ExprKind::ArrayAccess, tok().line);
        a->first_line = e->first_line;
        ++pos_;
        a->children.push_back(std::move(e));
        a->children.push_back(expression());
        expect_op("]");
        finish(*a);
        e = std::move(a);
      } else if (at_op("::")) {
        auto r = make(ExprKind::MethodRef, tok().line);
        r->first_line = e->first_line;
        ++pos_;
        if (at_op("<")) type_arguments();
        r->text = accept_word("new") ? "new" : expect_ident("method name");
        r->children.push_back(std::move(e));
        e = std::move(r);
      } else {
        return e;
      }
    }
  }

  // ---- statements ----------------------------------------------------------

  StmtPtr make_stmt(StmtKind kind, const Token& first) {
    auto s = std::make_unique<Stmt>();
    s->kind = kind;
    s->span = {first.line, first.line};
    s->head = s->span;
    first_offset_ = first.begin;
    return s;
  }

  void close_stmt(Stmt& s, std::size_t begin) {
    s.span.last = prev_line();
    if (s.text.empty()) s.text = source_text(begin, prev_end());
  }

  StmtPtr block() {
    const Token& open = tok();
    const std::size_t begin = open.begin;
    auto s = make_stmt(StmtKind::Block, open);
    expect_op("{");
    while (!at_op("}")) {
      if (tok().kind == TokenKind::End) fail("expected '}'");
      s->body.push_back(statement());
    }
    ++pos_;
    s->text = "{";
    close_stmt(*s, begin);
    return s;
  }

  bool at_local_class() const {
    std::size_t k = 0;
    while (true) {
      if (at_op("@", k) && !at_word("interface", k + 1)) {
        k += 2;
        while (at_op(".", k)) k += 2;
        if (at_op("(", k)) return false;  // let the declaration path handle it
        continue;
      }
      const Token& t = tok(k);
      if (t.kind == TokenKind::Identifier &&
          (t.text == "final" || t.text == "abstract" || t.text == "static" ||
           t.text == "strictfp" || t.text == "sealed")) {
        ++k;
        continue;
      }
      break;
    }
    if (at_word("class", k) || at_word("interface", k) || at_word("enum", k)) return true;
    if (at_op("@", k) && at_word("interface", k + 1)) return true;
    return at_word("record", k) && at_ident(k + 1) && (at_op("(", k + 2) || at_op("<", k + 2));
  }

  StmtPtr statement() {
    const Token& first = tok();
    const std::size_t begin = first.begin;
    if (at_op("{")) return block();
    if (at_op(";")) {
      auto s = make_stmt(StmtKind::Empty, first);
      ++pos_;
      close_stmt(*s, begin);
      return s;
    }
    if (at_op("@") || first.kind == TokenKind::Identifier) {
      if (at_local_class()) {
        auto s = make_stmt(StmtKind::LocalClass, first);
        while (!at_op("{")) {
          if (tok().kind == TokenKind::End) fail("expected class body");
          if (at_op("(")) {
            skip_balanced();
          } else {
            ++pos_;
          }
        }
        skip_balanced();
        close_stmt(*s, begin);
        s->text = abbreviate(s->text, 40);
        return s;
      }
    }
    if (first.kind == TokenKind::Identifier) {
      const std::string& w = first.text;
      if (w == "if") return if_statement();
      if (w == "while") return while_statement();
      if (w == "do") return do_statement();
      if (w == "for") return for_statement();
      if (w == "switch") return switch_statement();
      if (w == "try") return try_statement();
      if (w == "return" || w == "throw") {
        auto s = make_stmt(w == "return" ? StmtKind::Return : StmtKind::Throw, first);
        ++pos_;
        if (w == "throw" || !at_op(";")) s->expr = expression();
        expect_op(";");
        close_stmt(*s, begin);
        return s;
      }
      if (w == "break" || w == "continue") {
        auto s = make_stmt(w == "break" ? StmtKind::Break : StmtKind::Continue, first);
        ++pos_;
        if (at_ident()) s->label = toks_[pos_++].text;
        expect_op(";");
        close_stmt(*s, begin);
        return s;
      }
      if (w == "synchronized") {
        auto s = make_stmt(StmtKind::Synchronized, first);
        ++pos_;
        expect_op("(");
        s->expr = expression();
        expect_op(")");
        s->head = {first.line, prev_line()};
        s->text = source_text(begin, prev_end());
        s->then_branch = block();
        close_stmt(*s, begin);
        return s;
      }
      if (w == "assert") {
        auto s = make_stmt(StmtKind::Assert, first);
        ++pos_;
        s->expr = expression();
        if (accept_op(":")) expression();
        expect_op(";");
        close_stmt(*s, begin);
        return s;
      }
      if (w == "yield" && yield_ahead()) {
        auto s = make_stmt(StmtKind::Yield, first);
        ++pos_;
        s->expr = expression();
        expect_op(";");
        close_stmt(*s, begin);
        return s;
      }
      if (at_ident() && at_op(":", 1)) {
        auto s = make_stmt(StmtKind::Labeled, first);
        s->label = first.text;
        pos_ += 2;
        s->text = s->label + ":";
        s->then_branch = statement();
        close_stmt(*s, begin);
        return s;
      }
      if (w == "else" || w == "case" || w == "default" || w == "catch" || w == "finally") {
        fail("unexpected '" + w + "'");
      }
    }
    if (auto decl = try_local_var(/*require_semicolon=*/true)) return decl;
    return expression_statement();
  }

  bool yield_ahead() const {
    const Token& next = tok(1);
    if (next.kind == TokenKind::End) return false;
    if (next.kind != TokenKind::Operator) return true;
    static constexpr std::array<std::string_view, 17> kNotYield = {
        "=", ".", "[", "++", "--", "+=", "-=", "*=", "/=", "&=", "|=", "^=",
        "%=", "<<=", ">", "->", ";"};
    if (next.text == "(") return false;
    return std::find(kNotYield.begin(), kNotYield.end(), next.text) == kNotYield.end();
  }

  StmtPtr expression_statement() {
    const Token& first = tok();
    const std::size_t begin = first.begin;
    auto s = make_stmt(StmtKind::Expression, first);
    s->expr = expression();
    switch (s->expr->kind) {
      case ExprKind::Assign:
      case ExprKind::Call:
      case ExprKind::New:
      case ExprKind::Postfix:
        break;
      case ExprKind::Unary:
        if (s->expr->text == "++" || s->expr->text == "--") break;
        [[fallthrough]];
      default:
        throw SyntaxError(first.line, "not a statement");
    }
    expect_op(";");
    close_stmt(*s, begin);
    return s;
  }

  // Tells a declaration `Type name ...` apart from an expression statement.
  bool local_var_ahead() {
    const std::size_t saved = pos_;
    bool decl = false;
    try {
      const bool modifiers = at_word("final") || at_op("@");
      skip_modifiers(/*member=*/false);
      type();
      decl = at_ident() && (at_op("=", 1) || at_op(";", 1) || at_op(",", 1) ||
                            at_op("[", 1) || at_op(":", 1) || at_op(")", 1));
      decl = decl || (modifiers && at_ident());
    } catch (const SyntaxError&) {
      decl = false;
    }
    pos_ = saved;
    return decl;
  }

  StmtPtr try_local_var(bool require_semicolon) {
    if (!local_var_ahead()) return nullptr;
    const Token& first = tok();
    const std::size_t begin = first.begin;
    auto s = make_stmt(StmtKind::LocalVar, first);
    skip_modifiers(/*member=*/false);
    s->type_text = type();
    do {
      VarDeclarator v;
      v.line = tok().line;
      v.name = expect_ident("variable name");
      skip_dims();
      if (accept_op("=")) v.init = at_op("{") ? array_initializer() : expression();
      s->vars.push_back(std::move(v));
    } while (accept_op(","));
    if (require_semicolon) expect_op(";");
    close_stmt(*s, begin);
    return s;
  }

  void condition(Stmt& s, const Token& keyword) {
    expect_op("(");
    s.expr = expression();
    expect_op(")");
    s.head = {keyword.line, prev_line()};
    s.text = source_text(keyword.begin, prev_end());
  }

  StmtPtr if_statement() {
    const Token& kw = tok();
    auto s = make_stmt(StmtKind::If, kw);
    ++pos_;
    condition(*s, kw);
    s->then_branch = statement();
    if (accept_word("else")) s->else_branch = statement();
    s->span.last = prev_line();
    return s;
  }

  StmtPtr while_statement() {
    const Token& kw = tok();
    auto s = make_stmt(StmtKind::While, kw);
    ++pos_;
    condition(*s, kw);
    s->then_branch = statement();
    s->span.last = prev_line();
    return s;
  }

  StmtPtr do_statement() {
    const Token& kw = tok();
    auto s = make_stmt(StmtKind::DoWhile, kw);
    ++pos_;
    s->then_branch = statement();
    const Token& while_kw = tok();
    expect_word("while");
    condition(*s, while_kw);
    expect_op(";");
    s->span.last = prev_line();
    return s;
  }

  bool foreach_ahead() {
    const std::size_t saved = pos_;
    bool result = false;
    try {
      skip_modifiers(/*member=*/false);
      type();
      result = at_ident() && at_op(":", 1);
    } catch (const SyntaxError&) {
      result = false;
    }
    pos_ = saved;
    return result;
  }

  StmtPtr for_statement() {
    const Token& kw = tok();
    auto s = make_stmt(StmtKind::For, kw);
    ++pos_;
    expect_op("(");
    if (foreach_ahead()) {
      s->kind = StmtKind::ForEach;
      skip_modifiers(/*member=*/false);
      s->type_text = type();
      VarDeclarator v;
      v.line = tok().line;
      v.name = expect_ident("loop variable");
      expect_op(":");
      v.init = expression();
      s->vars.push_back(std::move(v));
      expect_op(")");
      s->head = {kw.line, prev_line()};
      s->text = source_text(kw.begin, prev_end());
      s->then_branch = statement();
      s->span.last = prev_line();
      return s;
    }
    if (!at_op(";")) {
      const int first_line = tok().line;
      if (auto decl = try_local_var(/*require_semicolon=*/false)) {
        s->init.push_back(std::move(decl));
      } else {
        do {
          const Token& t = tok();
          const std::size_t begin = t.begin;
          auto e = make_stmt(StmtKind::Expression, t);
          e->expr = expression();
          close_stmt(*e, begin);
          s->init.push_back(std::move(e));
        } while (accept_op(","));
      }
      s->init_span = {first_line, prev_line()};
    }
    expect_op(";");
    if (!at_op(";")) {
      const int first_line = tok().line;
      s->expr = expression();
      s->cond_span = {first_line, prev_line()};
    }
    expect_op(";");
    if (!at_op(")")) {
      const int first_line = tok().line;
      do {
        s->update.push_back(expression());
      } while (accept_op(","));
      s->update_span = {first_line, prev_line()};
    }
    expect_op(")");
    s->head = {kw.line, prev_line()};
    s->text = source_text(kw.begin, prev_end());
    s->then_branch = statement();
    s->span.last = prev_line();
    return s;
  }

  std::string case_label() {
    const std::size_t begin = tok().begin;
    int depth = 0;
    int ternary = 0;
    while (true) {
      const Token& t = tok();
      if (t.kind == TokenKind::End) fail("unterminated case label");
      if (t.kind == TokenKind::Operator) {
        if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
        if (t.text == ")" || t.text == "]" || t.text == "}") {
          if (depth == 0) fail("expected ':' or '->'");
          --depth;
        }
        if (depth == 0 && t.text == "?") ++ternary;
        if (depth == 0 && t.text == "->") break;
        if (depth == 0 && t.text == ":") {
          if (ternary == 0) break;
          --ternary;
        }
      }
      ++pos_;
    }
    if (prev_end() <= begin) fail("empty case label");
    return abbreviate(src_.substr(begin, prev_end() - begin));
  }

  StmtPtr switch_statement() {
    const Token& kw = tok();
    auto s = make_stmt(StmtKind::Switch, kw);
    ++pos_;
    condition(*s, kw);
    expect_op("{");
    while (!at_op("}")) {
      if (!at_word("case") && !at_word("default")) fail("expected 'case' or 'default'");
      const bool merge = !s->groups.empty() && !s->groups.back().arrow &&
                         s->groups.back().body.empty();
      if (!merge) {
        s->groups.emplace_back();
        s->groups.back().line = tok().line;
      }
      SwitchGroup& group = s->groups.back();
      if (accept_word("default")) {
        group.is_default = true;
        group.labels.push_back("default");
      } else {
        expect_word("case");
        std::string label = case_label();
        if (label == "default" || label.find("default") != std::string::npos) {
          group.is_default = label.find("default") != std::string::npos &&
                             (label == "default" || label.rfind(", default") != std::string::npos);
        }
        group.labels.push_back(std::move(label));
      }
      if (accept_op("->")) {
        group.arrow = true;
        if (at_op("{")) {
          group.body.push_back(block());
        } else if (at_word("throw")) {
          group.body.push_back(statement());
        } else {
          group.body.push_back(expression_statement_loose());
        }
        continue;
      }
      expect_op(":");
      while (!at_word("case") && !at_word("default") && !at_op("}")) {
        if (tok().kind == TokenKind::End) fail("expected '}'");
        group.body.push_back(statement());
      }
    }
    ++pos_;
    s->span.last = prev_line();
    return s;
  }

  // Arrow-form switch rule bodies may be any expression.
  StmtPtr expression_statement_loose() {
    const Token& first = tok();
    const std::size_t begin = first.begin;
    auto s = make_stmt(StmtKind::Expression, first);
    s->expr = expression();
    expect_op(";");
    close_stmt(*s, begin);
    return s;
  }

  StmtPtr try_statement() {
    const Token& kw = tok();
    const std::size_t begin = kw.begin;
    auto s = make_stmt(StmtKind::Try, kw);
    ++pos_;
    if (accept_op("(")) {
      while (!at_op(")")) {
        if (auto decl = try_local_var(/*require_semicolon=*/false)) {
          s->resources.push_back(std::move(decl));
        } else {
          const Token& t = tok();
          const std::size_t rbegin = t.begin;
          auto e = make_stmt(StmtKind::Expression, t);
          e->expr = expression();
          close_stmt(*e, rbegin);
          s->resources.push_back(std::move(e));
        }
        if (!accept_op(";")) break;
      }
      expect_op(")");
    }
    s->head = {kw.line, prev_line()};
    s->text = s->resources.empty() ? "try" : source_text(begin, prev_end());
    s->then_branch = block();
    while (at_word("catch")) {
      CatchClause c;
      c.line = tok().line;
      ++pos_;
      expect_op("(");
      skip_modifiers(/*member=*/false);
      c.type_text = type();
      while (accept_op("|")) c.type_text += " | " + type();
      c.name = expect_ident("exception variable");
      expect_op(")");
      c.body = block();
      s->catches.push_back(std::move(c));
    }
    if (accept_word("finally")) s->finally_block = block();
    if (s->resources.empty() && s->catches.empty() && !s->finally_block) {
      throw SyntaxError(kw.line, "'try' without 'catch' or 'finally'");
    }
    s->span.last = prev_line();
    return s;
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t first_offset_ = 0;
};

}  // namespace

MethodDecl parse_method_decl(std::string_view source, int first_line) {
  Parser parser(source, first_line);
  return parser.method();
}

// ---- file scanning ---------------------------------------------------------

namespace {

class MethodScanner {
 public:
  explicit MethodScanner(std::string_view src) : src_(src), toks_(tokenize(src, 1)) {}

  std::vector<MethodLocation> run() {
    while (tok().kind != TokenKind::End) {
      if (at_word("package") || at_word("import")) {
        skip_past(";");
        continue;
      }
      if (at_op(";")) {
        ++pos_;
        continue;
      }
      member("");
    }
    return std::move(found_);
  }

 private:
  const Token& tok(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool at_op(std::string_view s, std::size_t k = 0) const {
    return tok(k).kind == TokenKind::Operator && tok(k).text == s;
  }
  bool at_word(std::string_view s, std::size_t k = 0) const {
    return tok(k).kind == TokenKind::Identifier && tok(k).text == s;
  }

  void skip_past(std::string_view op) {
    while (tok().kind != TokenKind::End && !at_op(op)) ++pos_;
    if (tok().kind != TokenKind::End) ++pos_;
  }

  // Returns the index of the matching closer of the group opened at `pos_`.
  std::size_t skip_balanced() {
    const std::string open = tok().text;
    const std::string close = open == "(" ? ")" : open == "[" ? "]" : "}";
    const int line = tok().line;
    int depth = 0;
    do {
      if (tok().kind == TokenKind::End) throw SyntaxError(line, "unbalanced '" + open + "'");
      if (at_op(open)) ++depth;
      if (at_op(close)) --depth;
      ++pos_;
    } while (depth > 0);
    return pos_ - 1;
  }

  void skip_annotation() {
    ++pos_;  // '@'
    ++pos_;  // name
    while (at_op(".") && tok(1).kind == TokenKind::Identifier) pos_ += 2;
    if (at_op("(")) skip_balanced();
  }

  void class_body(const std::string& type_name, bool is_enum) {
    // pos_ is just past '{'
    if (is_enum) {
      while (!at_op(";") && !at_op("}")) {
        if (tok().kind == TokenKind::End) throw SyntaxError(tok().line, "unterminated enum");
        if (at_op("(") || at_op("{")) {
          skip_balanced();
        } else {
          ++pos_;
        }
      }
      if (at_op(";")) ++pos_;
    }
    while (!at_op("}")) {
      if (tok().kind == TokenKind::End) throw SyntaxError(tok().line, "expected '}'");
      if (at_op(";")) {
        ++pos_;
        continue;
      }
      member(type_name);
    }
    ++pos_;
  }

  void member(const std::string& enclosing) {
    const std::size_t start = pos_;
    std::string method_name;
    std::string type_keyword;
    std::string nested_name;
    bool seen_paren = false;
    while (true) {
      const Token& t = tok();
      if (t.kind == TokenKind::End) {
        throw SyntaxError(toks_[start].line, "unterminated declaration");
      }
      if (at_op("@") && !at_word("interface", 1)) {
        skip_annotation();
        continue;
      }
      if (at_op("@") && at_word("interface", 1)) {
        type_keyword = "interface";
        pos_ += 2;
        if (tok().kind == TokenKind::Identifier) nested_name = tok().text;
        continue;
      }
      if (t.kind == TokenKind::Identifier && type_keyword.empty() && !seen_paren &&
          (t.text == "class" || t.text == "interface" || t.text == "enum" ||
           (t.text == "record" && tok(1).kind == TokenKind::Identifier))) {
        type_keyword = t.text;
        ++pos_;
        if (tok().kind == TokenKind::Identifier) nested_name = tok().text;
        continue;
      }
      if (at_op("(")) {
        if (!seen_paren && type_keyword.empty() && pos_ > start &&
            toks_[pos_ - 1].kind == TokenKind::Identifier) {
          method_name = toks_[pos_ - 1].text;
        }
        seen_paren = true;
        skip_balanced();
        continue;
      }
      if (at_op(";")) {
        ++pos_;
        return;
      }
      if (at_op("=") && type_keyword.empty()) {
        // field initializer, possibly with array initializers or class bodies
        while (!at_op(";")) {
          if (tok().kind == TokenKind::End) {
            throw SyntaxError(toks_[start].line, "unterminated field");
          }
          if (at_op("(") || at_op("{") || at_op("[")) {
            skip_balanced();
          } else {
            ++pos_;
          }
        }
        ++pos_;
        return;
      }
      if (at_op("{")) {
        if (!type_keyword.empty()) {
          ++pos_;
          const std::string qualified =
              enclosing.empty() ? nested_name : enclosing + "." + nested_name;
          class_body(qualified, type_keyword == "enum");
          return;
        }
        const std::size_t open = pos_;
        const std::size_t close = skip_balanced();
        if (!method_name.empty()) record(enclosing, method_name, start, open, close);
        return;
      }
      ++pos_;
    }
  }

  void record(const std::string& enclosing, const std::string& name,
              std::size_t start, std::size_t /*open*/, std::size_t close) {
    MethodLocation loc;
    loc.name = name;
    loc.enclosing_type = enclosing;
    loc.first_line = toks_[start].line;
    loc.last_line = toks_[close].line;
    std::size_t begin = toks_[start].begin;
    // Widen to the start of the line when only indentation precedes.
    std::size_t line_start = begin;
    while (line_start > 0 && (src_[line_start - 1] == ' ' || src_[line_start - 1] == '\t')) {
      --line_start;
    }
    if (line_start == 0 || src_[line_start - 1] == '\n') begin = line_start;
    loc.begin = begin;
    loc.end = toks_[close].end;
    found_.push_back(std::move(loc));
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<MethodLocation> found_;
};

}  // namespace

std::vector<MethodLocation> find_methods(std::string_view file_source) {
  return MethodScanner(file_source).run();
}

}  // namespace leakscope::java
