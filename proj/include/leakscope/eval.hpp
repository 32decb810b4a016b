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

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "leakscope/detector.hpp"
#include "leakscope/intent.hpp"
#include "leakscope/provider.hpp"
#include "leakscope/snippet.hpp"

namespace leakscope {

/// A buggy/fixed method pair from a leak benchmark.
struct EvalPair {
  std::string id;
  std::string concerned_type;
  std::string buggy_source;
  std::string fixed_source;
  int buggy_first_line = 1;
  int fixed_first_line = 1;
  std::optional<IntentionSet> ground_buggy;
  std::optional<IntentionSet> ground_fixed;
  /// When set, only reports on this variable count for the pair.
  std::string expected_var;

  MethodSnippet buggy() const;  // method id "<id>:buggy"
  MethodSnippet fixed() const;  // method id "<id>:fixed"
  bool has_ground_truth() const { return ground_buggy && ground_fixed; }
};

/// Reads one JSON record per line: id, concerned_type, buggy, fixed, and
/// optionally buggy_first_line, fixed_first_line, expected_var, and
/// ground_truth {buggy, fixed} in canonical answer text. Blank lines and
/// lines starting with '#' are skipped. Throws std::runtime_error naming the
/// offending line.
std::vector<EvalPair> load_dataset(const std::string& path);
std::vector<EvalPair> parse_dataset(const std::string& text);

/// An intention attributed to one method version, e.g. ("p1:buggy", ...).
using TaggedIntention = std::pair<std::string, Intention>;

struct IntentionMetrics {
  std::size_t ground = 0;
  std::size_t inferred = 0;
  std::size_t matched = 0;
  double precision = 0.0;
  double recall = 0.0;
  std::vector<std::string> covered_types;
  std::size_t total_types = 0;
  double coverage = 0.0;
  std::vector<std::string> warnings;
};

enum class Outcome { Clean, Leak, Error };
std::string_view to_string(Outcome outcome);

struct PairVerdict {
  std::string id;
  Outcome buggy = Outcome::Clean;
  Outcome fixed = Outcome::Clean;
  bool detected = false;     // buggy version reported on the concerned resource
  bool false_alarm = false;  // fixed version reported on the concerned resource
  std::string message;       // error text, if any
};

struct DetectionMetrics {
  std::size_t pairs = 0;
  std::size_t detected = 0;
  std::size_t false_alarms = 0;
  double detection_rate = 0.0;
  double false_alarm_rate = 0.0;
  std::vector<PairVerdict> table;
  std::vector<std::string> warnings;
};

/// |ground ∩ inferred| / |inferred| and / |ground|; 0 with a warning when a
/// denominator is empty. Coverage fields are left untouched.
IntentionMetrics score_intentions(const std::set<TaggedIntention>& ground,
                                  const std::set<TaggedIntention>& inferred);

/// Rates over the table size; errors count as neither detected nor alarmed.
DetectionMetrics summarize_detection(std::vector<PairVerdict> table);

/// True when `var` in `snippet` plausibly holds a `concerned_type`: its
/// declared type equals the concerned type or one is a suffix of the other;
/// failing a declaration, the concerned type's simple name appears on one of
/// `lines`.
bool corresponds(const MethodSnippet& snippet, const std::string& var,
                 const std::vector<int>& lines, const std::string& concerned_type);

/// Precision, recall, and resource coverage of the gateway's intentions.
/// Throws std::invalid_argument when a pair has no ground truth.
IntentionMetrics eval_intentions(const std::vector<EvalPair>& pairs, Gateway& gateway,
                                 int jobs = 1);

DetectionMetrics eval_detection(const std::vector<EvalPair>& pairs, Gateway& gateway,
                                const AnalyzeOptions& options = {}, int jobs = 1);

std::string format_report(const DetectionMetrics& detection,
                          const std::optional<IntentionMetrics>& intentions);
/// One JSON object per line: a "pair" record per table row, then a "summary".
std::string format_report_json(const DetectionMetrics& detection,
                               const std::optional<IntentionMetrics>& intentions);

}  // namespace leakscope
