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
#include <string_view>
#include <vector>

namespace leakscope::java {

/// Malformed Java source. `line()` is the first offending line.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line),
        message_(message) {}
  int line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  std::string message_;
};

enum class TokenKind { Identifier, Number, String, Char, Operator, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  int line = 0;
  std::size_t begin = 0;  // byte offsets into the source
  std::size_t end = 0;
};

/// Splits Java source into tokens, dropping whitespace and comments.
///
/// `>` is always emitted as a single token so that nested generic closers
/// need no special casing; the parser recombines adjacent `>` tokens into
/// shift and comparison operators.
std::vector<Token> tokenize(std::string_view source, int first_line);

bool is_reserved_word(std::string_view word);

}  // namespace leakscope::java
