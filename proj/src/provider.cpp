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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "leakscope/provider.hpp"

#include <httplib.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "leakscope/hash.hpp"
#include "leakscope/prompt.hpp"

namespace leakscope {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string_view to_string(ProviderKind kind) {
  switch (kind) {
    case ProviderKind::Remote: return "remote";
    case ProviderKind::Rules: return "rules";
    case ProviderKind::Fixture: return "fixture";
  }
  return "?";
}

std::optional<ProviderKind> provider_kind_from_string(std::string_view text) {
  if (text == "remote") return ProviderKind::Remote;
  if (text == "rules") return ProviderKind::Rules;
  if (text == "fixture") return ProviderKind::Fixture;
  return std::nullopt;
}

namespace {

std::string random_hex(std::size_t bytes) {
  static std::mutex mu;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard<std::mutex> lock(mu);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < bytes; ++i) {
    const auto b = static_cast<unsigned>(rng() & 0xff);
    out += kHex[b >> 4];
    out += kHex[b & 0xf];
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Spaces out requests globally when a per-minute limit is configured.
void wait_for_rate_limit(int per_minute) {
  if (per_minute <= 0) return;
  static std::mutex mu;
  static std::chrono::steady_clock::time_point next{};
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard<std::mutex> lock(mu);
    const auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next);
    next = slot + std::chrono::microseconds(60'000'000 / per_minute);
  }
  std::this_thread::sleep_until(slot);
}

}  // namespace

// ---- rules ------------------------------------------------------------------

std::string RulesProvider::complete(const std::string& /*prompt*/, const MethodSnippet& snippet) {
  return render_answer(rule_based_infer(snippet, table_));
}

// ---- fixture ----------------------------------------------------------------

FixtureProvider::FixtureProvider(std::map<std::string, std::string> answers, std::string version)
    : answers_(std::move(answers)), version_(std::move(version)) {}

std::unique_ptr<FixtureProvider> FixtureProvider::from_file(const std::string& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": invalid fixture JSON: " + e.what());
  }
  if (doc.is_object() && doc.contains("answers")) doc = doc["answers"];
  if (!doc.is_object()) throw std::runtime_error(path + ": fixture must be a JSON object");
  std::map<std::string, std::string> answers;
  for (const auto& [key, value] : doc.items()) {
    if (value.is_string()) {
      answers[key] = value.get<std::string>();
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& line : value) {
        if (!line.is_string()) throw std::runtime_error(path + ": non-string line under " + key);
        joined += line.get<std::string>() + "\n";
      }
      answers[key] = joined;
    } else {
      throw std::runtime_error(path + ": answer for " + key + " must be text or lines");
    }
  }
  return std::make_unique<FixtureProvider>(std::move(answers), sha256_hex(text).substr(0, 16));
}

std::string FixtureProvider::complete(const std::string& /*prompt*/,
                                      const MethodSnippet& snippet) {
  std::vector<std::string> keys{snippet.hash(), snippet.method_id()};
  // file:Type.method:line
  const std::string& id = snippet.method_id();
  const auto last = id.rfind(':');
  const auto first = last == std::string::npos || last == 0 ? std::string::npos
                                                            : id.rfind(':', last - 1);
  if (first != std::string::npos) {
    const std::string file = fs::path(id.substr(0, first)).filename().string();
    const std::string member = id.substr(first + 1, last - first - 1);
    const std::string line = id.substr(last + 1);
    keys.push_back(file + ":" + member + ":" + line);
    keys.push_back(file + ":" + member);
    keys.push_back(file + ":" + snippet.name());
    keys.push_back(member);
  }
  keys.push_back(snippet.name());
  for (const auto& k : keys) {
    if (k.empty()) continue;
    auto it = answers_.find(k);
    if (it != answers_.end()) return it->second;
  }
  return {};
}

// ---- remote -----------------------------------------------------------------

HttpTransport default_transport() {
  return [](const std::string& url, const std::string& body,
            const std::map<std::string, std::string>& headers, int timeout_seconds) {
    HttpReply reply;
    const auto scheme_end = url.find("://");
    const auto path_start =
        url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    const std::string origin = url.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);
    httplib::Client client(origin);
    if (!client.is_valid()) {
      reply.error = "invalid endpoint " + url;
      return reply;
    }
    client.set_connection_timeout(timeout_seconds, 0);
    client.set_read_timeout(timeout_seconds, 0);
    client.set_write_timeout(timeout_seconds, 0);
    httplib::Headers h;
    for (const auto& [k, v] : headers) h.emplace(k, v);
    auto res = client.Post(path, h, body, "application/json");
    if (!res) {
      reply.error = httplib::to_string(res.error());
      return reply;
    }
    reply.status = res->status;
    reply.body = res->body;
    reply.request_id = res->get_header_value("x-request-id");
    return reply;
  };
}

RemoteProvider::RemoteProvider(ProviderConfig config, HttpTransport transport)
    : config_(std::move(config)), transport_(std::move(transport)) {
  config_.temperature = 0.0;
}

std::string RemoteProvider::complete(const std::string& prompt, const MethodSnippet& /*snippet*/) {
  std::string request_id = "ls-" + random_hex(8);
  json body = {{"model", config_.model},
               {"temperature", 0},
               {"messages", json::array({{{"role", "user"}, {"content", prompt}}})}};
  std::map<std::string, std::string> headers{{"X-Request-Id", request_id}};
  if (const char* key = std::getenv(std::string(kApiKeyEnv).c_str()); key && *key) {
    headers["Authorization"] = std::string("Bearer ") + key;
  }
  const std::string payload = body.dump();
  std::string last_error = "no attempt made";
  int attempt = 0;
  auto backoff = config_.initial_backoff;
  while (attempt < std::max(1, config_.max_attempts)) {
    ++attempt;
    ++attempts_;
    wait_for_rate_limit(config_.rate_limit_per_minute);
    HttpReply reply = transport_(config_.endpoint, payload, headers, config_.timeout_seconds);
    if (!reply.request_id.empty()) request_id = reply.request_id;
    if (reply.status == 200) {
      try {
        const json doc = json::parse(reply.body);
        return doc.at("choices").at(0).at("message").at("content").get<std::string>();
      } catch (const json::exception& e) {
        throw ProviderError(std::string("malformed completion response: ") + e.what(),
                            request_id, attempt);
      }
    }
    const bool retriable = reply.status == 0 || reply.status == 429 || reply.status >= 500;
    last_error = reply.status == 0 ? "transport failure: " + reply.error
                                   : "HTTP " + std::to_string(reply.status);
    if (!retriable) break;
    if (attempt < config_.max_attempts) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
  throw ProviderError(last_error + " after " + std::to_string(attempt) + " attempt(s)", request_id,
                      attempt);
}

std::unique_ptr<IntentionProvider> make_provider(const ProviderConfig& config) {
  switch (config.kind) {
    case ProviderKind::Remote:
      return std::make_unique<RemoteProvider>(config);
    case ProviderKind::Rules:
      return std::make_unique<RulesProvider>();
    case ProviderKind::Fixture:
      if (config.fixture_file.empty()) {
        throw std::invalid_argument("fixture provider needs a fixture file");
      }
      return FixtureProvider::from_file(config.fixture_file);
  }
  throw std::invalid_argument("unknown provider");
}

// ---- cache ------------------------------------------------------------------

std::string ResponseCache::key(std::string_view template_id, std::string_view snippet_hash,
                               std::string_view model) {
  std::string material(template_id);
  material += '\n';
  material += snippet_hash;
  material += '\n';
  material += model;
  return sha256_hex(material);
}

std::optional<std::string> ResponseCache::get(const std::string& key) const {
  std::ifstream in(fs::path(dir_) / (key + ".txt"), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ResponseCache::put(const std::string& key, const std::string& answer) const {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  const fs::path final_path = fs::path(dir_) / (key + ".txt");
  const fs::path tmp = fs::path(dir_) / (key + ".tmp." + random_hex(6));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;  // caching is best effort
    out << answer;
  }
  fs::rename(tmp, final_path, ec);
  if (ec) fs::remove(tmp, ec);
}

// ---- gateway ----------------------------------------------------------------

Gateway::Gateway(std::shared_ptr<IntentionProvider> provider, std::string cache_dir)
    : provider_(std::move(provider)) {
  if (!cache_dir.empty()) cache_.emplace(std::move(cache_dir));
}

std::string Gateway::answer(const MethodSnippet& snippet) {
  const PromptRequest request = make_request(snippet);
  std::string key;
  if (cache_) {
    key = ResponseCache::key(request.template_id, snippet.hash(), provider_->model());
    if (auto hit = cache_->get(key)) {
      ++cache_hits_;
      return *hit;
    }
  }
  const std::string prompt = render_prompt(request);
  ++provider_calls_;
  std::string text = provider_->complete(prompt, snippet);
  if (cache_) cache_->put(key, text);
  return text;
}

IntentionSet infer(const MethodSnippet& snippet, const ProviderConfig& config) {
  Gateway gateway(make_provider(config), config.cache_dir);
  return gateway.infer(snippet);
}

}  // namespace leakscope
