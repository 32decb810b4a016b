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

#include "leakscope/intent.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace leakscope {

std::string_view to_string(IntentionKind kind) {
  switch (kind) {
    case IntentionKind::Acquire:
      return "ACQUIRE";
    case IntentionKind::Release:
      return "RELEASE";
    case IntentionKind::Validate:
      return "VALIDATE";
  }
  return "?";
}

std::optional<IntentionKind> intention_kind_from_string(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (upper == "ACQUIRE") return IntentionKind::Acquire;
  if (upper == "RELEASE") return IntentionKind::Release;
  if (upper == "VALIDATE") return IntentionKind::Validate;
  return std::nullopt;
}

std::string normalize_var(std::string_view var) {
  constexpr std::string_view kThis = "this.";
  if (var.substr(0, kThis.size()) == kThis) var.remove_prefix(kThis.size());
  return std::string(var);
}

Intention::Intention(IntentionKind kind, std::string_view var, int lineno,
                     std::string call_text)
    : kind_(kind),
      var_(normalize_var(var)),
      lineno_(lineno),
      call_text_(std::move(call_text)) {
  if (var_.empty()) throw std::invalid_argument("intention variable is empty");
  if (std::any_of(var_.begin(), var_.end(),
                  [](unsigned char c) { return std::isspace(c); })) {
    throw std::invalid_argument("intention variable contains whitespace: " +
                                var_);
  }
  if (var_.find_first_of("`*\"'") != std::string::npos) {
    throw std::invalid_argument("intention variable contains quoting: " + var_);
  }
  if (lineno_ < 1) {
    throw std::invalid_argument("intention line must be >= 1, got " +
                                std::to_string(lineno_));
  }
}

bool operator<(const Intention& a, const Intention& b) {
  return std::tie(a.lineno_, a.kind_, a.var_) <
         std::tie(b.lineno_, b.kind_, b.var_);
}

std::string to_string(const Intention& intention) {
  std::ostringstream out;
  out << to_string(intention.kind()) << '(' << intention.var() << ", "
      << intention.lineno() << ')';
  return out.str();
}

IntentionSet::IntentionSet(std::initializer_list<Intention> items) {
  for (const auto& item : items) insert(item);
}

bool IntentionSet::insert(Intention intention) {
  return items_.insert(std::move(intention)).second;
}

void IntentionSet::merge(const IntentionSet& other) {
  for (const auto& item : other) insert(item);
}

bool IntentionSet::contains(IntentionKind kind, std::string_view var,
                            int lineno) const {
  if (lineno < 1 || var.empty()) return false;
  const std::string normalized = normalize_var(var);
  return std::any_of(items_.begin(), items_.end(), [&](const Intention& i) {
    return i.kind() == kind && i.lineno() == lineno && i.var() == normalized;
  });
}

bool IntentionSet::contains_in_span(IntentionKind kind, std::string_view var,
                                    int first, int last) const {
  const std::string normalized = normalize_var(var);
  return std::any_of(items_.begin(), items_.end(), [&](const Intention& i) {
    return i.kind() == kind && i.var() == normalized && i.lineno() >= first &&
           i.lineno() <= last;
  });
}

bool IntentionSet::touches_resource(int lineno) const {
  return std::any_of(items_.begin(), items_.end(), [&](const Intention& i) {
    return i.lineno() == lineno && i.kind() != IntentionKind::Validate;
  });
}

std::vector<std::string> IntentionSet::acquired_vars() const {
  std::set<std::string> vars;
  for (const auto& i : items_) {
    if (i.kind() == IntentionKind::Acquire) vars.insert(i.var());
  }
  return {vars.begin(), vars.end()};
}

std::vector<int> IntentionSet::lines_of(IntentionKind kind,
                                        std::string_view var) const {
  const std::string normalized = normalize_var(var);
  std::vector<int> lines;
  for (const auto& i : items_) {
    if (i.kind() == kind && i.var() == normalized) lines.push_back(i.lineno());
  }
  return lines;
}

namespace {

// Case-insensitive character classes for one keyword, e.g. "[aA][cC]...".
std::string ci(std::string_view word) {
  std::string out;
  for (char c : word) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      out += '[';
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      out += ']';
    } else {
      out += c;
    }
  }
  return out;
}

const std::regex& acquire_release_pattern() {
  static const std::regex re("line\\s+([0-9]+)\\s*:\\s*(.*)\\s+(" +
                             ci("acquires") + "|" + ci("releases") +
                             ")\\s+(\\S+)\\s+resource\\b");
  return re;
}

const std::regex& validate_pattern() {
  static const std::regex re("line\\s+([0-9]+)\\s*:\\s*(.*)\\s+" +
                             ci("validates") + "\\s+" + ci("reachability") +
                             "\\s+" + ci("of") + "\\s+(\\S+)\\s+resource\\b");
  return re;
}

// Markdown emphasis and quoting around the variable token.
std::string strip_decoration(std::string token) {
  auto is_decoration = [](char c) {
    return c == '`' || c == '*' || c == '"' || c == '\'';
  };
  while (!token.empty() && is_decoration(token.front())) token.erase(0, 1);
  while (!token.empty() && is_decoration(token.back())) token.pop_back();
  return token;
}

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

void add_match(IntentionSet& out, IntentionKind kind, const std::string& line,
               const std::string& call, const std::string& var) {
  try {
    const long value = std::stol(line);
    if (value < 1 || value > 100'000'000) return;
    out.insert(Intention(kind, strip_decoration(var), static_cast<int>(value),
                         trim(call)));
  } catch (const std::exception&) {
    // Malformed numbers or variables are provider noise.
  }
}

}  // namespace

IntentionSet parse_answer(std::string_view answer_text) {
  IntentionSet out;
  std::istringstream lines{std::string(answer_text)};
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::smatch m;
    if (std::regex_search(line, m, validate_pattern())) {
      add_match(out, IntentionKind::Validate, m[1], m[2], m[3]);
      continue;
    }
    if (std::regex_search(line, m, acquire_release_pattern())) {
      const char verb = static_cast<char>(
          std::tolower(static_cast<unsigned char>(m[3].str().front())));
      add_match(out, verb == 'a' ? IntentionKind::Acquire : IntentionKind::Release,
                m[1], m[2], m[4]);
    }
  }
  return out;
}

std::string render_answer(const IntentionSet& intents) {
  std::string out;
  for (const auto& i : intents) {
    std::string call = i.call_text();
    std::replace(call.begin(), call.end(), '\n', ' ');
    std::replace(call.begin(), call.end(), '\r', ' ');
    call = trim(call);
    std::string lowered = call;
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    // Call text that itself reads like a pattern would confuse re-parsing.
    if (lowered.find("resource") != std::string::npos) call.clear();
    out += "line " + std::to_string(i.lineno()) + ": ";
    switch (i.kind()) {
      case IntentionKind::Acquire:
        out += (call.empty() ? "open()" : call) + " acquires " + i.var() +
               " resource\n";
        break;
      case IntentionKind::Release:
        out += (call.empty() ? "close()" : call) + " releases " + i.var() +
               " resource\n";
        break;
      case IntentionKind::Validate:
        out += (call.empty() ? "if-condition" : call) +
               " validates reachability of " + i.var() + " resource\n";
        break;
    }
  }
  return out;
}

}  // namespace leakscope
