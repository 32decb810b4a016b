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

#include <string>
#include <vector>

#include "leakscope/intent.hpp"
#include "leakscope/snippet.hpp"

namespace leakscope {

/// Syntactic resource idioms recognised by the offline provider.
///
/// Call patterns are either a bare method name (`close`) or
/// `Receiver.method`, where Receiver is compared with the last segment of
/// the receiver expression.
struct KnowledgeTable {
  /// Simple type names (regular expressions) whose `new` acquires.
  std::vector<std::string> acquire_types;
  /// Simple type names never treated as resources, checked first.
  std::vector<std::string> ignored_types;
  /// Calls whose result, assigned to a variable, is an acquired resource.
  std::vector<std::string> acquire_calls;
  /// Calls that acquire their receiver, e.g. `lock.lock()`.
  std::vector<std::string> acquire_receiver_calls;
  /// Zero-argument calls that release their receiver, e.g. `in.close()`.
  std::vector<std::string> release_receiver_calls;
  /// Calls that release their single argument, e.g. `closeQuietly(in)`.
  std::vector<std::string> release_argument_calls;
  /// Calls in if-conditions that validate their receiver, e.g. `isOpen()`.
  std::vector<std::string> validate_receiver_calls;
  /// `x != null` / `x == null` in if-conditions validate `x`.
  bool null_checks_validate = true;

  static const KnowledgeTable& defaults();
};

/// Intentions found by matching `table` against the method's syntax tree.
/// Validate intentions are kept only for variables that are also acquired or
/// released somewhere in the method.
IntentionSet rule_based_infer(const MethodSnippet& snippet,
                              const KnowledgeTable& table = KnowledgeTable::defaults());

}  // namespace leakscope
