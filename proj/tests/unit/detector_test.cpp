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

#include "leakscope/detector.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "leakscope/java_parser.hpp"
#include "support/random_java.hpp"

namespace leakscope {
namespace {

using K = IntentionKind;

MethodSnippet motivating(const std::string& version) {
  std::ifstream in(std::string(LEAKSCOPE_TESTDATA_DIR) + "/motivating/" + version +
                   "/HttpFetcher.java");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string file = ss.str();
  for (const auto& m : java::find_methods(file)) {
    if (m.name == "fetchContent") {
      return parse_method(file.substr(m.begin, m.end - m.begin), m.first_line,
                          "HttpFetcher.java:HttpFetcher.fetchContent:160");
    }
  }
  throw std::runtime_error("fetchContent not found");
}

const IntentionSet kAligned{Intention(K::Acquire, "client", 167),
                            Intention(K::Validate, "client", 185),
                            Intention(K::Release, "client", 186)};
const IntentionSet kAsPublished{Intention(K::Acquire, "client", 167),
                                Intention(K::Release, "client", 185),
                                Intention(K::Validate, "client", 186)};

ControlFlowPath risky_path(bool risky) {
  ControlFlowPath p;
  p.risky = risky;
  return p;
}

TEST(Propagate, TruthTable) {
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      ControlFlowPath p1 = risky_path(a), p2 = risky_path(b);
      BranchPair pair{{&p1}, {&p2}};
      propagate(pair);
      if (a && !b) {
        EXPECT_FALSE(p1.risky);
        EXPECT_FALSE(p2.risky);
      } else if (b && !a) {
        EXPECT_FALSE(p1.risky);
        EXPECT_FALSE(p2.risky);
      } else {
        EXPECT_EQ(p1.risky, a == 1);
        EXPECT_EQ(p2.risky, b == 1);
      }
    }
  }
}

TEST(Propagate, RequiresWholeGroup) {
  ControlFlowPath r = risky_path(true), s = risky_path(false), t = risky_path(false);
  BranchPair pair{{&r, &s}, {&t}};
  propagate(pair);
  EXPECT_TRUE(r.risky);
}

TEST(Stage1, Counter) {
  const auto g = build_cfg(parse_method("void m() {\n  r = open();\n  r.close();\n}"));
  auto paths = enumerate(g, {});
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(resource_balance(g, paths[0], "r", {Intention(K::Acquire, "r", 2)}), 1);
  EXPECT_EQ(resource_balance(g, paths[0], "r",
                             {Intention(K::Acquire, "r", 2), Intention(K::Release, "r", 3)}),
            0);
  EXPECT_EQ(resource_balance(g, paths[0], "r", {Intention(K::Release, "r", 3)}), -1);
  stage1(paths, g, "r", {Intention(K::Release, "r", 3)});
  EXPECT_FALSE(paths[0].risky);
}

TEST(Detect, MotivatingExample) {
  for (const auto* set : {&kAligned, &kAsPublished}) {
    const auto buggy = analyze(motivating("buggy"), *set);
    ASSERT_EQ(buggy.paths.size(), 1u);
    ASSERT_EQ(buggy.reports.size(), 1u);
    EXPECT_EQ(buggy.reports[0].resource, "client");
    EXPECT_EQ(buggy.reports[0].acquire_lines, std::vector<int>{167});
    EXPECT_EQ(buggy.reports[0].witness, "[160-185]");
    EXPECT_TRUE(analyze(motivating("fixed"), *set).reports.empty());
  }
}

TEST(Detect, MotivatingFixedPaths) {
  const auto a = analyze(motivating("fixed"), kAligned);
  ASSERT_EQ(a.paths.size(), 2u);
  EXPECT_EQ(format_intervals(a.cfg, a.paths[0], a.paths), "[160-185, 186, 187-190]");
  EXPECT_EQ(format_intervals(a.cfg, a.paths[1], a.paths), "[160-185, 187-190]");
  // Stage 1 alone flags the skip-release path; Stage 2 clears it.
  auto work = a.paths;
  stage1(work, a.cfg, "client", kAligned);
  EXPECT_FALSE(work[0].risky);
  EXPECT_TRUE(work[1].risky);
  stage2(work, a.cfg, "client", kAligned);
  EXPECT_FALSE(work[1].risky);
}

TEST(Detect, WithoutValidateTheFixedVersionLeaks) {
  const IntentionSet no_validate{Intention(K::Acquire, "client", 167),
                                 Intention(K::Release, "client", 186)};
  const auto a = analyze(motivating("fixed"), no_validate);
  ASSERT_EQ(a.reports.size(), 1u);
  EXPECT_EQ(a.reports[0].witness, "[160-185, 187-190]");
}

TEST(Detect, BothBranchesRiskyStayRisky) {
  const auto s = parse_method(
      "void m() {\n  r = open();\n  if (r != null) {\n    log();\n  } else {\n    r.close();\n"
      "    r = open();\n  }\n}");
  const IntentionSet intents{Intention(K::Acquire, "r", 2), Intention(K::Validate, "r", 3),
                             Intention(K::Release, "r", 6), Intention(K::Acquire, "r", 7)};
  const auto v = detect("r", enumerate(build_cfg(s), intents), intents, build_cfg(s));
  EXPECT_TRUE(v.leaked);
}

TEST(Detect, NoIntentionsNoLeak) {
  const auto s = motivating("buggy");
  const auto g = build_cfg(s);
  const auto v = detect("client", enumerate(g, {}), {}, g);
  EXPECT_FALSE(v.leaked);
  EXPECT_FALSE(v.witness.has_value());
}

TEST(Detect, NestedGuardsClearInsideOut) {
  // The inner guard clears the path that skips the release; only then is the
  // outer guard's true side entirely non-risky.
  const auto s = parse_method(
      "void m() {\n"         // 1
      "  r = open();\n"      // 2
      "  if (r != null) {\n" // 3
      "    if (ok) {\n"      // 4
      "      r.close();\n"   // 5
      "    }\n"              // 6
      "  } else {\n"         // 7
      "    r.close();\n"     // 8
      "  }\n"                // 9
      "}");
  const IntentionSet intents{Intention(K::Acquire, "r", 2), Intention(K::Validate, "r", 3),
                             Intention(K::Validate, "r", 4), Intention(K::Release, "r", 5),
                             Intention(K::Release, "r", 8)};
  const auto g = build_cfg(s);
  auto paths = enumerate(g, intents);
  ASSERT_EQ(paths.size(), 3u);
  stage1(paths, g, "r", intents);
  EXPECT_EQ(std::count_if(paths.begin(), paths.end(), [](auto& p) { return p.risky; }), 1);
  stage2(paths, g, "r", intents);
  EXPECT_TRUE(std::none_of(paths.begin(), paths.end(), [](auto& p) { return p.risky; }));

  // Processing the outer guard first would leave the path risky.
  IntentionSet outer_only{Intention(K::Acquire, "r", 2), Intention(K::Validate, "r", 3),
                          Intention(K::Release, "r", 5), Intention(K::Release, "r", 8)};
  auto again = enumerate(g, outer_only);
  stage1(again, g, "r", outer_only);
  stage2(again, g, "r", outer_only);
  EXPECT_EQ(std::count_if(again.begin(), again.end(), [](auto& p) { return p.risky; }), 1);
}

TEST(Analyze, TryWithResourcesSuppressed) {
  const auto s = parse_method("void m() {\n  try (X r = open()) {\n    r.read();\n  }\n}");
  const IntentionSet intents{Intention(K::Acquire, "r", 2)};
  const auto a = analyze(s, intents);
  ASSERT_EQ(a.verdicts.size(), 1u);
  EXPECT_TRUE(a.verdicts[0].leaked);
  EXPECT_TRUE(a.reports.empty());
}

TEST(Analyze, FinallyReleaseCoversReturn) {
  const auto s = parse_method(
      "int m() {\n  R r = open();\n  try {\n    return r.read();\n  } finally {\n"
      "    r.close();\n  }\n}");
  const IntentionSet intents{Intention(K::Acquire, "r", 2), Intention(K::Release, "r", 6)};
  EXPECT_TRUE(analyze_method(s, intents).empty());
}

TEST(Analyze, PerResourceIndependence) {
  const auto s = parse_method("void m() {\n  a = open();\n  b = open();\n  b.close();\n}");
  const IntentionSet one{Intention(K::Acquire, "a", 2)};
  IntentionSet both = one;
  both.insert(Intention(K::Acquire, "b", 3));
  both.insert(Intention(K::Release, "b", 4));
  const auto r1 = analyze_method(s, one);
  const auto r2 = analyze_method(s, both);
  ASSERT_EQ(r1.size(), 1u);
  ASSERT_EQ(r2.size(), 1u);
  EXPECT_EQ(r1[0].resource, r2[0].resource);
  EXPECT_EQ(r1[0].witness, r2[0].witness);
}

TEST(Analyze, JsonReport) {
  const auto r = analyze_method(motivating("buggy"), kAsPublished);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(to_json(r[0]),
            R"({"resource":"client","acquire_lines":[167],"witness_lines":[)" +
                [&] {
                  std::string s;
                  for (std::size_t i = 0; i < r[0].witness_lines.size(); ++i) {
                    s += (i ? "," : "") + std::to_string(r[0].witness_lines[i]);
                  }
                  return s;
                }() +
                R"(],"witness":"[160-185]","method_id":"HttpFetcher.java:HttpFetcher.fetchContent:160"})");
}

TEST(DetectorProperty, Stage2IsMonotoneAndWitnessesAreUnbalanced) {
  testing::RandomJava gen(4242);
  for (int i = 0; i < 300; ++i) {
    const auto m = gen.method();
    const auto g = build_cfg(parse_method(m.source));
    const auto intents = gen.intentions(m.lines);
    const auto paths = enumerate(g, intents);
    for (const auto& res : intents.acquired_vars()) {
      auto work = paths;
      stage1(work, g, res, intents);
      const auto before = work;
      stage2(work, g, res, intents);
      for (std::size_t k = 0; k < work.size(); ++k) {
        ASSERT_TRUE(before[k].risky || !work[k].risky) << m.source;
      }
      const auto v = detect(res, paths, intents, g);
      ASSERT_EQ(v.leaked, v.witness.has_value());
      if (v.witness) ASSERT_GT(resource_balance(g, *v.witness, res, intents), 0);
    }
  }
}

}  // namespace
}  // namespace leakscope
