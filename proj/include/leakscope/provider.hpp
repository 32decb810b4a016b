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

#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "leakscope/intent.hpp"
#include "leakscope/rules.hpp"
#include "leakscope/snippet.hpp"

namespace leakscope {

enum class ProviderKind { Remote, Rules, Fixture };

std::string_view to_string(ProviderKind kind);
std::optional<ProviderKind> provider_kind_from_string(std::string_view text);

inline constexpr std::string_view kApiKeyEnv = "LEAKSCOPE_API_KEY";

struct ProviderConfig {
  ProviderKind kind = ProviderKind::Rules;
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model = "gpt-4";
  double temperature = 0.0;  // the remote provider always sends 0
  int timeout_seconds = 60;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{1000};
  std::string cache_dir;  // empty disables caching
  std::string fixture_file;
  int rate_limit_per_minute = 0;  // 0 = unlimited
};

/// The provider could not produce an answer.
class ProviderError : public std::runtime_error {
 public:
  ProviderError(const std::string& message, std::string request_id, int attempts = 0)
      : std::runtime_error(message + " (request " + request_id + ")"),
        request_id_(std::move(request_id)),
        attempts_(attempts) {}
  const std::string& request_id() const { return request_id_; }
  int attempts() const { return attempts_; }

 private:
  std::string request_id_;
  int attempts_;
};

/// Anything that turns a rendered prompt into answer text.
class IntentionProvider {
 public:
  virtual ~IntentionProvider() = default;
  virtual std::string name() const = 0;
  /// Identifies the answering model in cache keys.
  virtual std::string model() const = 0;
  /// Must be safe to call concurrently. Throws ProviderError.
  virtual std::string complete(const std::string& prompt, const MethodSnippet& snippet) = 0;
};

/// Answers from the built-in knowledge table; ignores the prompt.
class RulesProvider : public IntentionProvider {
 public:
  explicit RulesProvider(const KnowledgeTable& table = KnowledgeTable::defaults())
      : table_(table) {}
  std::string name() const override { return "rules"; }
  std::string model() const override { return "rules-v1"; }
  std::string complete(const std::string& prompt, const MethodSnippet& snippet) override;

 private:
  const KnowledgeTable& table_;
};

/// Canned answers keyed by snippet hash or symbolic method id.
///
/// Lookup order: snippet hash, the full method id, then shorter forms of a
/// `file:Type.method:line` id (basename with and without the line, then
/// `Type.method`), and finally the bare method name. A miss yields an empty
/// answer.
class FixtureProvider : public IntentionProvider {
 public:
  explicit FixtureProvider(std::map<std::string, std::string> answers,
                           std::string version = "inline");
  /// Reads a JSON object mapping keys to answer text (a string or an array of
  /// lines), optionally nested under "answers".
  static std::unique_ptr<FixtureProvider> from_file(const std::string& path);

  std::string name() const override { return "fixture"; }
  std::string model() const override { return "fixture-" + version_; }
  std::string complete(const std::string& prompt, const MethodSnippet& snippet) override;

 private:
  std::map<std::string, std::string> answers_;
  std::string version_;
};

struct HttpReply {
  int status = 0;  // 0 = transport failure
  std::string body;
  std::string error;
  std::string request_id;  // from the server, when it sends one
};

/// POSTs a JSON body; injectable for tests.
using HttpTransport = std::function<HttpReply(const std::string& url, const std::string& body,
                                              const std::map<std::string, std::string>& headers,
                                              int timeout_seconds)>;

HttpTransport default_transport();

/// Generic chat-completion client: {model, messages, temperature: 0}.
class RemoteProvider : public IntentionProvider {
 public:
  explicit RemoteProvider(ProviderConfig config, HttpTransport transport = default_transport());
  std::string name() const override { return "remote"; }
  std::string model() const override { return config_.model; }
  std::string complete(const std::string& prompt, const MethodSnippet& snippet) override;

  int attempts_made() const { return attempts_.load(); }

 private:
  ProviderConfig config_;
  HttpTransport transport_;
  std::atomic<int> attempts_{0};
};

std::unique_ptr<IntentionProvider> make_provider(const ProviderConfig& config);

/// Raw answers stored as one file per key; last write wins.
class ResponseCache {
 public:
  explicit ResponseCache(std::string dir) : dir_(std::move(dir)) {}
  static std::string key(std::string_view template_id, std::string_view snippet_hash,
                         std::string_view model);
  std::optional<std::string> get(const std::string& key) const;
  void put(const std::string& key, const std::string& answer) const;

 private:
  std::string dir_;
};

/// Prompt rendering, provider call, caching, and answer extraction.
class Gateway {
 public:
  explicit Gateway(std::shared_ptr<IntentionProvider> provider, std::string cache_dir = {});

  /// Raw answer text for the snippet (cached). Throws ProviderError.
  std::string answer(const MethodSnippet& snippet);
  IntentionSet infer(const MethodSnippet& snippet) { return parse_answer(answer(snippet)); }

  IntentionProvider& provider() { return *provider_; }
  int provider_calls() const { return provider_calls_.load(); }
  int cache_hits() const { return cache_hits_.load(); }

 private:
  std::shared_ptr<IntentionProvider> provider_;
  std::optional<ResponseCache> cache_;
  std::atomic<int> provider_calls_{0};
  std::atomic<int> cache_hits_{0};
};

/// One-shot convenience: builds a provider from `config` and infers.
IntentionSet infer(const MethodSnippet& snippet, const ProviderConfig& config);

}  // namespace leakscope
