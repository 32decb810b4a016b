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
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace leakscope {

/// The three resource-oriented intentions a line of code can carry.
enum class IntentionKind { Acquire, Release, Validate };

std::string_view to_string(IntentionKind kind);
std::optional<IntentionKind> intention_kind_from_string(std::string_view text);

/// Strips a leading `this.` qualifier; the result is what intentions compare on.
std::string normalize_var(std::string_view var);

/// One formal intention expression: KIND(var, lineno).
///
/// `call_text` is informational only and takes no part in ordering or
/// equality.
class Intention {
 public:
  /// Throws std::invalid_argument when `var` is empty, contains whitespace,
  /// or `lineno` < 1.
  Intention(IntentionKind kind, std::string_view var, int lineno,
            std::string call_text = {});

  IntentionKind kind() const { return kind_; }
  const std::string& var() const { return var_; }
  int lineno() const { return lineno_; }
  const std::string& call_text() const { return call_text_; }

  friend bool operator==(const Intention& a, const Intention& b) {
    return a.kind_ == b.kind_ && a.lineno_ == b.lineno_ && a.var_ == b.var_;
  }
  /// Orders by line, then kind, then variable.
  friend bool operator<(const Intention& a, const Intention& b);

 private:
  IntentionKind kind_;
  std::string var_;
  int lineno_;
  std::string call_text_;
};

std::string to_string(const Intention& intention);

/// Duplicate-free intention collection with deterministic iteration order.
class IntentionSet {
 public:
  using const_iterator = std::set<Intention>::const_iterator;

  IntentionSet() = default;
  IntentionSet(std::initializer_list<Intention> items);

  /// Returns false when an equal intention was already present.
  bool insert(Intention intention);
  void merge(const IntentionSet& other);

  bool contains(IntentionKind kind, std::string_view var, int lineno) const;
  /// True when some intention of `kind` for `var` has a line in [first, last].
  bool contains_in_span(IntentionKind kind, std::string_view var, int first,
                        int last) const;
  /// True when some Acquire or Release intention (any variable) sits on `lineno`.
  bool touches_resource(int lineno) const;

  /// Distinct variables of Acquire intentions, sorted.
  std::vector<std::string> acquired_vars() const;
  std::vector<int> lines_of(IntentionKind kind, std::string_view var) const;

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const_iterator begin() const { return items_.begin(); }
  const_iterator end() const { return items_.end(); }

  friend bool operator==(const IntentionSet& a, const IntentionSet& b) {
    return a.items_ == b.items_;
  }

 private:
  std::set<Intention> items_;
};

/// Membership test under (kind, var, lineno).
inline bool query(const IntentionSet& intents, IntentionKind kind,
                  std::string_view var, int lineno) {
  return intents.contains(kind, var, lineno);
}

/// Extracts every canonical pattern line from free-form provider output.
/// Non-matching content is ignored; never throws.
IntentionSet parse_answer(std::string_view answer_text);

/// One canonical pattern line per intention, in set order.
std::string render_answer(const IntentionSet& intents);

}  // namespace leakscope
