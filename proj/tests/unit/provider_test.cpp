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

#include "leakscope/provider.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <mutex>

#include <nlohmann/json.hpp>

namespace leakscope {
namespace {

namespace fs = std::filesystem;
using K = IntentionKind;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("leakscope-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

// Answers with a fixed text and counts its calls.
class CountingProvider : public IntentionProvider {
 public:
  explicit CountingProvider(std::string answer) : answer_(std::move(answer)) {}
  std::string name() const override { return "counting"; }
  std::string model() const override { return "counting-1"; }
  std::string complete(const std::string& prompt, const MethodSnippet&) override {
    std::lock_guard<std::mutex> lock(mu_);
    ++calls;
    last_prompt = prompt;
    return answer_;
  }
  int calls = 0;
  std::string last_prompt;

 private:
  std::mutex mu_;
  std::string answer_;
};

std::string completion(const std::string& content) {
  return nlohmann::json{{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}}}
      .dump();
}

ProviderConfig fast_remote() {
  ProviderConfig c;
  c.kind = ProviderKind::Remote;
  c.endpoint = "http://127.0.0.1:1/v1/chat/completions";
  c.initial_backoff = std::chrono::milliseconds(0);
  c.timeout_seconds = 2;
  return c;
}

const auto kSnippet = [] { return parse_method("void m() {\n  a();\n}", 1, "A.java:A.m:1"); };

TEST(ProviderKind, Names) {
  EXPECT_EQ(provider_kind_from_string("remote"), ProviderKind::Remote);
  EXPECT_EQ(provider_kind_from_string("rules"), ProviderKind::Rules);
  EXPECT_EQ(provider_kind_from_string("fixture"), ProviderKind::Fixture);
  EXPECT_FALSE(provider_kind_from_string("gpt").has_value());
  EXPECT_EQ(to_string(ProviderKind::Fixture), "fixture");
}

TEST(Gateway, CacheTransparency) {
  TempDir dir;
  auto provider = std::make_shared<CountingProvider>("line 2: a() acquires r resource\n");
  Gateway cold(provider, dir.path().string());
  const auto first = cold.infer(kSnippet());
  EXPECT_EQ(provider->calls, 1);
  const auto second = cold.infer(kSnippet());
  EXPECT_EQ(provider->calls, 1);
  EXPECT_EQ(first, second);
  EXPECT_EQ(cold.cache_hits(), 1);

  // A fresh gateway on a warm cache never reaches the provider.
  Gateway warm(provider, dir.path().string());
  EXPECT_EQ(warm.infer(kSnippet()), first);
  EXPECT_EQ(provider->calls, 1);
  EXPECT_EQ(warm.provider_calls(), 0);
}

TEST(Gateway, WithoutCacheAlwaysAsks) {
  auto provider = std::make_shared<CountingProvider>("");
  Gateway g(provider);
  EXPECT_TRUE(g.infer(kSnippet()).empty());
  g.infer(kSnippet());
  EXPECT_EQ(provider->calls, 2);
  EXPECT_NE(provider->last_prompt.find("2:   a();"), std::string::npos);
}

TEST(Gateway, CacheKeyDependsOnTemplateSnippetAndModel) {
  const auto k = ResponseCache::key("t", "h", "m");
  EXPECT_EQ(k.size(), 64u);
  EXPECT_NE(k, ResponseCache::key("t2", "h", "m"));
  EXPECT_NE(k, ResponseCache::key("t", "h2", "m"));
  EXPECT_NE(k, ResponseCache::key("t", "h", "m2"));
  EXPECT_EQ(k, ResponseCache::key("t", "h", "m"));
}

TEST(Fixture, MotivatingFixture) {
  auto p = FixtureProvider::from_file(std::string(LEAKSCOPE_TESTDATA_DIR) +
                                      "/motivating/fixture.json");
  const auto s = parse_method("void fetchContent() {}", 160,
                              "/some/dir/HttpFetcher.java:HttpFetcher.fetchContent:160");
  EXPECT_EQ(parse_answer(p->complete("", s)),
            (IntentionSet{Intention(K::Acquire, "client", 167), Intention(K::Validate, "client", 185),
                          Intention(K::Release, "client", 186)}));
  EXPECT_EQ(p->model().rfind("fixture-", 0), 0u);
  EXPECT_EQ(p->complete("", parse_method("void other() {}")), "");
}

TEST(Fixture, LookupByHashThenId) {
  const auto s = kSnippet();
  using Answers = std::map<std::string, std::string>;
  FixtureProvider p(Answers{{s.hash(), "by hash"}, {"A.java:A.m:1", "by id"}, {"m", "by name"}});
  EXPECT_EQ(p.complete("", s), "by hash");
  FixtureProvider q(Answers{{"A.java:A.m:1", "by id"}, {"m", "by name"}});
  EXPECT_EQ(q.complete("", s), "by id");
  FixtureProvider r(Answers{{"m", "by name"}});
  EXPECT_EQ(r.complete("", s), "by name");
}

TEST(Fixture, RejectsMalformedFiles) {
  TempDir dir;
  const auto bad = dir.path() / "bad.json";
  std::ofstream(bad) << "{\"x\": 3}";
  EXPECT_THROW(FixtureProvider::from_file(bad.string()), std::runtime_error);
  std::ofstream(dir.path() / "broken.json") << "{";
  EXPECT_THROW(FixtureProvider::from_file((dir.path() / "broken.json").string()),
               std::runtime_error);
  EXPECT_THROW(FixtureProvider::from_file((dir.path() / "missing.json").string()),
               std::runtime_error);
}

TEST(Remote, SendsDeterministicChatRequest) {
  nlohmann::json seen;
  std::map<std::string, std::string> seen_headers;
  RemoteProvider p(fast_remote(), [&](const std::string&, const std::string& body,
                                      const std::map<std::string, std::string>& headers, int) {
    seen = nlohmann::json::parse(body);
    seen_headers = headers;
    return HttpReply{200, completion("line 2: a() acquires r resource"), "", ""};
  });
  EXPECT_EQ(p.complete("PROMPT", kSnippet()), "line 2: a() acquires r resource");
  EXPECT_EQ(seen["temperature"], 0);
  EXPECT_EQ(seen["model"], "gpt-4");
  EXPECT_EQ(seen["messages"][0]["content"], "PROMPT");
  EXPECT_EQ(seen_headers.count("X-Request-Id"), 1u);
}

TEST(Remote, RetriesTransientFailures) {
  int calls = 0;
  RemoteProvider p(fast_remote(), [&](const auto&, const auto&, const auto&, int) {
    ++calls;
    if (calls < 3) return HttpReply{calls == 1 ? 503 : 429, "", "", ""};
    return HttpReply{200, completion("ok"), "", ""};
  });
  EXPECT_EQ(p.complete("x", kSnippet()), "ok");
  EXPECT_EQ(calls, 3);
}

TEST(Remote, ClientErrorsAreNotRetried) {
  int calls = 0;
  RemoteProvider p(fast_remote(), [&](const auto&, const auto&, const auto&, int) {
    ++calls;
    return HttpReply{401, "", "", "srv-7"};
  });
  try {
    p.complete("x", kSnippet());
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_EQ(e.request_id(), "srv-7");
    EXPECT_EQ(e.attempts(), 1);
  }
  EXPECT_EQ(calls, 1);
}

TEST(Remote, MalformedResponseIsAnError) {
  RemoteProvider p(fast_remote(), [](const auto&, const auto&, const auto&, int) {
    return HttpReply{200, "{\"nope\":1}", "", ""};
  });
  EXPECT_THROW(p.complete("x", kSnippet()), ProviderError);
}

TEST(Remote, UnreachableEndpointFailsAfterRetries) {
  RemoteProvider p(fast_remote());
  try {
    p.complete("x", kSnippet());
    FAIL() << "expected ProviderError";
  } catch (const ProviderError& e) {
    EXPECT_EQ(e.attempts(), 3);
    EXPECT_FALSE(e.request_id().empty());
    EXPECT_NE(std::string(e.what()).find("request"), std::string::npos);
  }
  EXPECT_EQ(p.attempts_made(), 3);
}

TEST(Infer, RulesProviderThroughConfig) {
  ProviderConfig c;
  const auto s = parse_method("void m(String p) {\n  FileInputStream f = new FileInputStream(p);\n"
                              "  f.close();\n}");
  EXPECT_EQ(infer(s, c), (IntentionSet{Intention(K::Acquire, "f", 2), Intention(K::Release, "f", 3)}));
}

TEST(Infer, FixtureWithoutFileIsAConfigError) {
  ProviderConfig c;
  c.kind = ProviderKind::Fixture;
  EXPECT_THROW(make_provider(c), std::invalid_argument);
}

}  // namespace
}  // namespace leakscope
