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

#include "leakscope/java_lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace leakscope::java {

namespace {

constexpr std::array<std::string_view, 20> kMultiCharOps = {
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=",
    "<=",  "+=",  "-=", "*=", "/=", "&=", "|=", "^=", "%=", "<<"};

constexpr std::string_view kSingleCharOps = "(){}[];,.@=><!~?:+-*/&|^%";

bool is_ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) {
  return is_ident_start(c) || std::isdigit(c);
}

class Lexer {
 public:
  Lexer(std::string_view src, int first_line) : src_(src), line_(first_line) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    Token end;
    end.kind = TokenKind::End;
    end.line = line_;
    end.begin = end.end = src_.size();
    out.push_back(end);
    return out;
  }

 private:
  char peek(std::size_t k = 0) const {
    return pos_ + k < src_.size() ? src_[pos_ + k] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') ++line_;
    ++pos_;
  }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      const char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        const int start = line_;
        advance();
        advance();
        while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) {
          advance();
        }
        if (pos_ >= src_.size()) throw SyntaxError(start, "unterminated comment");
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  Token next() {
    Token tok;
    tok.line = line_;
    tok.begin = pos_;
    const auto c = static_cast<unsigned char>(peek());
    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_part(static_cast<unsigned char>(peek()))) {
        advance();
      }
      tok.kind = TokenKind::Identifier;
    } else if (std::isdigit(c) ||
               (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      lex_number();
      tok.kind = TokenKind::Number;
    } else if (c == '"') {
      lex_string();
      tok.kind = TokenKind::String;
    } else if (c == '\'') {
      lex_quoted('\'', "unterminated character literal");
      tok.kind = TokenKind::Char;
    } else {
      lex_operator();
      tok.kind = TokenKind::Operator;
    }
    tok.end = pos_;
    tok.text = std::string(src_.substr(tok.begin, tok.end - tok.begin));
    return tok;
  }

  void lex_number() {
    bool hex = false;
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      hex = true;
      advance();
      advance();
    }
    while (pos_ < src_.size()) {
      const auto ch = static_cast<unsigned char>(peek());
      if (std::isalnum(ch) || ch == '_' || ch == '.') {
        const bool exponent = hex ? (ch == 'p' || ch == 'P') : (ch == 'e' || ch == 'E');
        advance();
        if (exponent && (peek() == '+' || peek() == '-')) advance();
      } else {
        break;
      }
    }
  }

  void lex_string() {
    if (peek(1) == '"' && peek(2) == '"') {
      const int start = line_;
      advance();
      advance();
      advance();
      while (pos_ < src_.size()) {
        if (peek() == '\\') {
          advance();
          if (pos_ < src_.size()) advance();
          continue;
        }
        if (peek() == '"' && peek(1) == '"' && peek(2) == '"') {
          advance();
          advance();
          advance();
          return;
        }
        advance();
      }
      throw SyntaxError(start, "unterminated text block");
    }
    lex_quoted('"', "unterminated string literal");
  }

  void lex_quoted(char quote, const char* error) {
    const int start = line_;
    advance();
    while (pos_ < src_.size() && peek() != quote) {
      if (peek() == '\n') throw SyntaxError(start, error);
      if (peek() == '\\') advance();
      if (pos_ < src_.size()) advance();
    }
    if (pos_ >= src_.size()) throw SyntaxError(start, error);
    advance();
  }

  void lex_operator() {
    for (std::string_view op : kMultiCharOps) {
      if (src_.substr(pos_, op.size()) == op) {
        for (std::size_t i = 0; i < op.size(); ++i) advance();
        return;
      }
    }
    if (kSingleCharOps.find(peek()) == std::string_view::npos) {
      throw SyntaxError(line_, std::string("unexpected character '") + peek() + "'");
    }
    advance();
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source, int first_line) {
  return Lexer(source, first_line).run();
}

bool is_reserved_word(std::string_view word) {
  static constexpr std::array<std::string_view, 53> kReserved = {
      "abstract", "assert",     "boolean",   "break",     "byte",
      "case",     "catch",      "char",      "class",     "const",
      "continue", "default",    "do",        "double",    "else",
      "enum",     "extends",    "final",     "finally",   "float",
      "for",      "goto",       "if",        "implements", "import",
      "instanceof", "int",      "interface", "long",      "native",
      "new",      "package",    "private",   "protected", "public",
      "return",   "short",      "static",    "strictfp",  "super",
      "switch",   "synchronized", "this",    "throw",     "throws",
      "transient", "try",       "void",      "volatile",  "while",
      "true",     "false",      "null"};
  return std::find(kReserved.begin(), kReserved.end(), word) != kReserved.end();
}

}  // namespace leakscope::java
