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

#include "leakscope/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace leakscope {
namespace {

namespace fs = std::filesystem;

const std::string kMotivating = std::string(LEAKSCOPE_TESTDATA_DIR) + "/motivating";

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "leakscope");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> fixture_args(const std::string& version, const std::string& fixture) {
  return {"-i", kMotivating + "/" + version + "/HttpFetcher.java", "-m", "fetchContent",
          "--provider", "fixture", "--fixture-file", kMotivating + "/" + fixture};
}

TEST(Cli, FixedVersionIsClean) {
  for (const char* fixture : {"fixture.json", "fixture_as_published.json"}) {
    const auto r = invoke(fixture_args("fixed", fixture));
    EXPECT_EQ(r.status, kExitClean) << r.err;
    EXPECT_EQ(r.out, "");
  }
}

TEST(Cli, BuggyVersionReportsClient) {
  const auto r = invoke(fixture_args("buggy", "fixture.json"));
  EXPECT_EQ(r.status, kExitLeaks) << r.err;
  EXPECT_NE(r.out.find("HttpFetcher.java:167: leak: 'client' acquired at line 167 in "
                       "HttpFetcher.fetchContent may not be released on path [160-185]"),
            std::string::npos)
      << r.out;
}

TEST(Cli, JsonIsOneObjectPerLine) {
  auto args = fixture_args("buggy", "fixture.json");
  args.insert(args.end(), {"--format", "json"});
  const auto r = invoke(args);
  EXPECT_EQ(r.status, kExitLeaks);
  std::istringstream lines(r.out);
  int count = 0;
  for (std::string line; std::getline(lines, line); ++count) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j["resource"], "client");
    EXPECT_EQ(j["acquire_lines"], nlohmann::json::array({167}));
    EXPECT_FALSE(j["witness_lines"].empty());
    EXPECT_NE(j["method_id"].get<std::string>().find("HttpFetcher.fetchContent:160"),
              std::string::npos);
  }
  EXPECT_EQ(count, 1);
}

TEST(Cli, RulesProviderOnDirectories) {
  const auto buggy = invoke({"-i", kMotivating + "/buggy"});
  EXPECT_EQ(buggy.status, kExitLeaks) << buggy.err;
  const auto fixed = invoke({"-i", kMotivating + "/fixed"});
  EXPECT_EQ(fixed.status, kExitClean) << fixed.out << fixed.err;
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"-i", kMotivating, "--format", "json", "-j", "4"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.err, b.err);
}

TEST(Cli, MethodSelectorByLine) {
  auto r = invoke({"-i", kMotivating + "/buggy/HttpFetcher.java", "-m", "170"});
  EXPECT_EQ(r.status, kExitLeaks);
  r = invoke({"-i", kMotivating + "/buggy/HttpFetcher.java", "-m", "noSuchMethod"});
  EXPECT_EQ(r.status, kExitError);
  EXPECT_NE(r.err.find("no method matches"), std::string::npos);
}

TEST(Cli, OperationalErrors) {
  EXPECT_EQ(invoke({"-i", "/definitely/not/here.java"}).status, kExitError);
  EXPECT_EQ(invoke({}).status, kExitError);
  EXPECT_EQ(invoke({"-i", kMotivating, "--provider", "fixture"}).status, kExitError);
  EXPECT_EQ(invoke({"-i", kMotivating, "--provider", "psychic"}).status, kExitError);
  EXPECT_EQ(invoke({"-i", kMotivating, "--max-paths", "0"}).status, kExitError);
}

TEST(Cli, ErrorsNameFileAndLine) {
  const auto dir = fs::temp_directory_path() / "leakscope-cli-test";
  fs::create_directories(dir);
  const auto file = dir / "Broken.java";
  std::ofstream(file) << "class Broken {\n  void m() {\n    int x = ;\n  }\n}\n";
  const auto r = invoke({"-i", file.string()});
  EXPECT_EQ(r.status, kExitError);
  EXPECT_NE(r.err.find("Broken.java:3: error:"), std::string::npos) << r.err;

  std::ofstream(file) << "class Broken {\n  void m() {\n    run(() -> {\n      if (x) return;\n"
                         "    });\n  }\n}\n";
  const auto u = invoke({"-i", file.string()});
  EXPECT_EQ(u.status, kExitError);
  EXPECT_NE(u.err.find("Broken.java:4: error: unsupported construct"), std::string::npos) << u.err;
  fs::remove_all(dir);
}

TEST(Cli, PathExplosionIsAnError) {
  const auto dir = fs::temp_directory_path() / "leakscope-cli-explode";
  fs::create_directories(dir);
  const auto file = dir / "Many.java";
  std::ofstream out(file);
  out << "class Many {\n  void m(InputStream in) {\n";
  for (int i = 0; i < 6; ++i) out << "    if (c" << i << ") { in.close(); }\n";
  out << "  }\n}\n";
  out.close();
  const auto r = invoke({"-i", file.string(), "--max-paths", "8"});
  EXPECT_EQ(r.status, kExitError);
  EXPECT_NE(r.err.find("path explosion"), std::string::npos) << r.err;
  EXPECT_EQ(invoke({"-i", file.string()}).status, kExitClean);
  fs::remove_all(dir);
}

TEST(Cli, DumpsGoToStderr) {
  auto args = fixture_args("fixed", "fixture.json");
  args.insert(args.end(), {"--dump-cfg", "--dump-paths"});
  const auto r = invoke(args);
  EXPECT_EQ(r.status, kExitClean);
  EXPECT_NE(r.err.find("path 0 [160-185, 186, 187-190]"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("path 1 [160-185, 187-190]"), std::string::npos);
  EXPECT_NE(r.err.find("if-branch 185"), std::string::npos);
}

TEST(Cli, EvalSubcommand) {
  const std::string data = std::string(LEAKSCOPE_TESTDATA_DIR) + "/eval";
  const auto r = invoke({"eval", "-d", data + "/pairs.jsonl", "--provider", "fixture",
                         "--fixture-file", data + "/answers.json", "-j", "2"});
  EXPECT_EQ(r.status, kExitClean) << r.err;
  EXPECT_NE(r.out.find("detection rate:   6/10 (60.0%)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("precision:        28/30 (93.3%)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("recall:           28/35 (80.0%)"), std::string::npos) << r.out;
  EXPECT_EQ(invoke({"eval", "-d", data + "/nope.jsonl"}).status, kExitError);
}

}  // namespace
}  // namespace leakscope
