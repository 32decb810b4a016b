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

#include "leakscope/eval.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>

#include "leakscope/parallel.hpp"

namespace leakscope {

using json = nlohmann::ordered_json;

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Clean: return "clean";
    case Outcome::Leak: return "leak";
    case Outcome::Error: return "error";
  }
  return "?";
}

MethodSnippet EvalPair::buggy() const {
  return parse_method(buggy_source, buggy_first_line, id + ":buggy");
}

MethodSnippet EvalPair::fixed() const {
  return parse_method(fixed_source, fixed_first_line, id + ":fixed");
}

std::vector<EvalPair> parse_dataset(const std::string& text) {
  std::vector<EvalPair> pairs;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::set<std::string> ids;
  while (std::getline(in, line)) {
    ++lineno;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    auto fail = [&](const std::string& what) {
      throw std::runtime_error("dataset line " + std::to_string(lineno) + ": " + what);
    };
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(std::string("invalid JSON: ") + e.what());
    }
    try {
      EvalPair p;
      p.id = rec.at("id").get<std::string>();
      p.concerned_type = rec.at("concerned_type").get<std::string>();
      p.buggy_source = rec.at("buggy").get<std::string>();
      p.fixed_source = rec.at("fixed").get<std::string>();
      p.buggy_first_line = rec.value("buggy_first_line", 1);
      p.fixed_first_line = rec.value("fixed_first_line", 1);
      p.expected_var = rec.value("expected_var", std::string());
      if (rec.contains("ground_truth")) {
        const auto& gt = rec["ground_truth"];
        p.ground_buggy = parse_answer(gt.at("buggy").get<std::string>());
        p.ground_fixed = parse_answer(gt.at("fixed").get<std::string>());
      }
      if (p.id.empty()) fail("empty id");
      if (p.concerned_type.empty()) fail("empty concerned_type");
      if (!ids.insert(p.id).second) fail("duplicate id " + p.id);
      pairs.push_back(std::move(p));
    } catch (const json::exception& e) {
      fail(std::string("bad record: ") + e.what());
    }
  }
  return pairs;
}

std::vector<EvalPair> load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read dataset " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dataset(ss.str());
}

IntentionMetrics score_intentions(const std::set<TaggedIntention>& ground,
                                  const std::set<TaggedIntention>& inferred) {
  IntentionMetrics m;
  m.ground = ground.size();
  m.inferred = inferred.size();
  for (const auto& i : inferred) m.matched += ground.count(i);
  if (m.inferred == 0) {
    m.warnings.push_back("no intentions inferred; precision reported as 0");
  } else {
    m.precision = static_cast<double>(m.matched) / static_cast<double>(m.inferred);
  }
  if (m.ground == 0) {
    m.warnings.push_back("ground truth is empty; recall reported as 0");
  } else {
    m.recall = static_cast<double>(m.matched) / static_cast<double>(m.ground);
  }
  return m;
}

DetectionMetrics summarize_detection(std::vector<PairVerdict> table) {
  DetectionMetrics m;
  m.pairs = table.size();
  for (const auto& row : table) {
    m.detected += row.detected;
    m.false_alarms += row.false_alarm;
    if (row.buggy == Outcome::Error || row.fixed == Outcome::Error) {
      m.warnings.push_back("pair " + row.id + " failed: " + row.message);
    }
  }
  if (m.pairs > 0) {
    m.detection_rate = static_cast<double>(m.detected) / static_cast<double>(m.pairs);
    m.false_alarm_rate = static_cast<double>(m.false_alarms) / static_cast<double>(m.pairs);
  }
  m.table = std::move(table);
  return m;
}

namespace {

std::string strip_type(std::string_view type) {
  std::string out;
  int depth = 0;
  for (char c : type) {
    if (c == '<') ++depth;
    if (depth == 0 && c != ' ' && c != '>' && c != '[' && c != ']') out += c;
    if (c == '>') --depth;
  }
  return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string simple_name(const std::string& type) {
  const auto dot = type.rfind('.');
  return dot == std::string::npos ? type : type.substr(dot + 1);
}

}  // namespace

bool corresponds(const MethodSnippet& snippet, const std::string& var,
                 const std::vector<int>& lines, const std::string& concerned_type) {
  const std::string concerned = strip_type(concerned_type);
  if (concerned.empty()) return false;
  if (auto declared = snippet.declared_type(var)) {
    const std::string type = strip_type(*declared);
    if (!type.empty() && type != "var") {
      return type == concerned || ends_with(concerned, type) || ends_with(type, concerned);
    }
  }
  const std::string name = simple_name(concerned);
  return std::any_of(lines.begin(), lines.end(), [&](int line) {
    return snippet.line_text(line).find(name) != std::string::npos;
  });
}

IntentionMetrics eval_intentions(const std::vector<EvalPair>& pairs, Gateway& gateway, int jobs) {
  for (const auto& p : pairs) {
    if (!p.has_ground_truth()) {
      throw std::invalid_argument("pair " + p.id + " has no ground-truth intentions");
    }
  }
  std::set<TaggedIntention> ground;
  std::set<TaggedIntention> inferred;
  std::set<std::string> types;
  std::set<std::string> covered;
  std::vector<std::string> warnings;
  std::mutex mu;
  for (const auto& p : pairs) {
    types.insert(p.concerned_type);
    for (const auto& i : *p.ground_buggy) ground.emplace(p.id + ":buggy", i);
    for (const auto& i : *p.ground_fixed) ground.emplace(p.id + ":fixed", i);
  }
  parallel_for(pairs.size() * 2, jobs, [&](std::size_t k) {
    const EvalPair& p = pairs[k / 2];
    const bool is_buggy = k % 2 == 0;
    const std::string tag = p.id + (is_buggy ? ":buggy" : ":fixed");
    try {
      const MethodSnippet snippet = is_buggy ? p.buggy() : p.fixed();
      const IntentionSet got = gateway.infer(snippet);
      bool hit = false;
      for (const auto& i : got) {
        if (!p.expected_var.empty() ? i.var() == p.expected_var
                                    : corresponds(snippet, i.var(), {i.lineno()}, p.concerned_type)) {
          hit = true;
        }
      }
      std::lock_guard<std::mutex> lock(mu);
      for (const auto& i : got) inferred.emplace(tag, i);
      if (hit) covered.insert(p.concerned_type);
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(mu);
      warnings.push_back(tag + ": " + e.what());
    }
  });
  IntentionMetrics m = score_intentions(ground, inferred);
  std::sort(warnings.begin(), warnings.end());
  m.warnings.insert(m.warnings.end(), warnings.begin(), warnings.end());
  m.covered_types.assign(covered.begin(), covered.end());
  m.total_types = types.size();
  if (m.total_types > 0) {
    m.coverage = static_cast<double>(m.covered_types.size()) / static_cast<double>(m.total_types);
  }
  return m;
}

DetectionMetrics eval_detection(const std::vector<EvalPair>& pairs, Gateway& gateway,
                                const AnalyzeOptions& options, int jobs) {
  std::vector<PairVerdict> table(pairs.size());
  parallel_for(pairs.size(), jobs, [&](std::size_t k) {
    const EvalPair& p = pairs[k];
    PairVerdict& row = table[k];
    row.id = p.id;
    auto run = [&](bool is_buggy, Outcome& outcome, bool& flagged) {
      try {
        const MethodSnippet snippet = is_buggy ? p.buggy() : p.fixed();
        const auto reports = analyze_method(snippet, gateway.infer(snippet), options);
        outcome = reports.empty() ? Outcome::Clean : Outcome::Leak;
        for (const auto& r : reports) {
          const bool match = !p.expected_var.empty()
                                 ? r.resource == p.expected_var
                                 : corresponds(snippet, r.resource, r.acquire_lines, p.concerned_type);
          flagged = flagged || match;
        }
      } catch (const std::exception& e) {
        outcome = Outcome::Error;
        if (!row.message.empty()) row.message += "; ";
        row.message += std::string(is_buggy ? "buggy: " : "fixed: ") + e.what();
      }
    };
    run(true, row.buggy, row.detected);
    run(false, row.fixed, row.false_alarm);
  });
  return summarize_detection(std::move(table));
}

namespace {

std::string percent(double v) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(1) << v * 100.0 << '%';
  return ss.str();
}

}  // namespace

std::string format_report(const DetectionMetrics& d, const std::optional<IntentionMetrics>& im) {
  std::ostringstream out;
  std::size_t width = 4;
  for (const auto& row : d.table) width = std::max(width, row.id.size());
  out << std::left << std::setw(static_cast<int>(width)) << "pair"
      << "  buggy  fixed  detected  false-alarm\n";
  for (const auto& row : d.table) {
    out << std::left << std::setw(static_cast<int>(width)) << row.id << "  " << std::setw(5)
        << to_string(row.buggy) << "  " << std::setw(5) << to_string(row.fixed) << "  "
        << std::setw(8) << (row.detected ? "yes" : "no") << "  "
        << (row.false_alarm ? "yes" : "no") << '\n';
  }
  out << "\ndetection rate:   " << d.detected << '/' << d.pairs << " (" << percent(d.detection_rate)
      << ")\n";
  out << "false alarm rate: " << d.false_alarms << '/' << d.pairs << " ("
      << percent(d.false_alarm_rate) << ")\n";
  if (im) {
    out << "precision:        " << im->matched << '/' << im->inferred << " ("
        << percent(im->precision) << ")\n";
    out << "recall:           " << im->matched << '/' << im->ground << " (" << percent(im->recall)
        << ")\n";
    out << "resource coverage: " << im->covered_types.size() << '/' << im->total_types << " ("
        << percent(im->coverage) << ")\n";
  }
  for (const auto& w : d.warnings) out << "warning: " << w << '\n';
  if (im) {
    for (const auto& w : im->warnings) out << "warning: " << w << '\n';
  }
  return out.str();
}

std::string format_report_json(const DetectionMetrics& d,
                               const std::optional<IntentionMetrics>& im) {
  std::ostringstream out;
  for (const auto& row : d.table) {
    json j;
    j["record"] = "pair";
    j["id"] = row.id;
    j["buggy"] = to_string(row.buggy);
    j["fixed"] = to_string(row.fixed);
    j["detected"] = row.detected;
    j["false_alarm"] = row.false_alarm;
    if (!row.message.empty()) j["message"] = row.message;
    out << j.dump() << '\n';
  }
  json s;
  s["record"] = "summary";
  s["pairs"] = d.pairs;
  s["detected"] = d.detected;
  s["false_alarms"] = d.false_alarms;
  s["detection_rate"] = d.detection_rate;
  s["false_alarm_rate"] = d.false_alarm_rate;
  if (im) {
    s["inferred"] = im->inferred;
    s["ground"] = im->ground;
    s["matched"] = im->matched;
    s["precision"] = im->precision;
    s["recall"] = im->recall;
    s["covered_types"] = im->covered_types;
    s["total_types"] = im->total_types;
    s["coverage"] = im->coverage;
  }
  out << s.dump() << '\n';
  return out.str();
}

}  // namespace leakscope
