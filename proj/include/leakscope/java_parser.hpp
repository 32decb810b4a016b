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
#include <string>
#include <string_view>
#include <vector>

#include "leakscope/java_ast.hpp"
#include "leakscope/java_lexer.hpp"

namespace leakscope::java {

/// Parses one method declaration, or a lone `{ ... }` body block, whose first
/// character sits on `first_line`. Throws SyntaxError.
MethodDecl parse_method_decl(std::string_view source, int first_line);

/// A method with a body found while scanning a compilation unit.
struct MethodLocation {
  std::string name;
  std::string enclosing_type;
  int first_line = 0;  // line of the first modifier, annotation, or type
  int last_line = 0;   // line of the closing brace
  std::size_t begin = 0;  // byte offsets into the file text
  std::size_t end = 0;
};

/// Locates every method and constructor body in a Java file, including those
/// of nested named types. Bodies of anonymous classes are not descended into.
/// Throws SyntaxError when braces do not balance.
std::vector<MethodLocation> find_methods(std::string_view file_source);

}  // namespace leakscope::java
