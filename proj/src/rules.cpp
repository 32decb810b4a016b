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

#include "leakscope/rules.hpp"

#include <algorithm>
#include <optional>
#include <regex>
#include <set>

namespace leakscope {

const KnowledgeTable& KnowledgeTable::defaults() {
  static const KnowledgeTable table = [] {
    KnowledgeTable t;
    t.acquire_types = {
        ".*InputStream", ".*OutputStream", ".*Reader", ".*Writer", "PrintStream",
        "Socket", "ServerSocket", "DatagramSocket", "SSLSocket", "RandomAccessFile",
        "Scanner", "ZipFile", "JarFile", "Formatter", ".*Channel", "MediaPlayer",
        "MediaRecorder", "MediaMetadataRetriever", "SoundPool", "AudioRecord", "AudioTrack",
        "VelocityTracker", "LocalSocket", "LocalServerSocket", "ParcelFileDescriptor",
        ".*Connection",
    };
    t.ignored_types = {
        "StringReader", "StringWriter", "CharArrayReader", "CharArrayWriter",
        "ByteArrayInputStream", "ByteArrayOutputStream", "StringBufferInputStream",
    };
    t.acquire_calls = {
        "AndroidHttpClient.newInstance", "query", "rawQuery", "queryWithFactory",
        "rawQueryWithFactory", "getWritableDatabase", "getReadableDatabase",
        "openOrCreateDatabase", "openDatabase", "openFileInput", "openFileOutput",
        "openInputStream", "openOutputStream", "openFileDescriptor", "openAssetFileDescriptor",
        "openRawResource", "openStream", "openConnection", "getConnection", "accept",
        "Camera.open", "MediaPlayer.create", "VelocityTracker.obtain", "Parcel.obtain",
        "obtainStyledAttributes", "obtainAttributes", "obtainTypedArray", "createStatement",
        "prepareStatement", "prepareCall", "executeQuery", "getInputStream", "getOutputStream",
        "newInputStream", "newOutputStream", "newBufferedReader", "newBufferedWriter",
        "acquireContentProviderClient", "acquireUnstableContentProviderClient",
    };
    t.acquire_receiver_calls = {"lock", "lockInterruptibly", "acquire"};
    t.release_receiver_calls = {
        "close", "unlock", "release", "recycle", "disconnect", "shutdown", "shutdownNow",
        "destroy", "dispose", "terminate", "releaseConnection",
    };
    t.release_argument_calls = {"closeQuietly", "closeSilently", "closeQuiet", "close",
                                "closeStream", "safeClose"};
    t.validate_receiver_calls = {"isOpen", "isClosed", "isHeld", "isHeldByCurrentThread",
                                 "isLocked", "isConnected", "isAlive", "isShutdown",
                                 "isRecycled", "isPlaying"};
    return t;
  }();
  return table;
}

namespace {

using java::Expr;
using java::ExprKind;
using java::Stmt;
using java::StmtKind;

std::string simple_type_name(std::string_view type) {
  std::string out;
  int depth = 0;
  for (char c : type) {
    if (c == '<') ++depth;
    if (depth == 0 && c != ' ' && c != '>') out += c;
    if (c == '>') --depth;
  }
  const auto dot = out.rfind('.');
  if (dot != std::string::npos) out = out.substr(dot + 1);
  const auto bracket = out.find('[');
  if (bracket != std::string::npos) out = out.substr(0, bracket);
  return out;
}

// Variable named by `e`: `x` or `this.x`.
std::optional<std::string> target_name(const Expr& e) {
  if (e.kind == ExprKind::Name) return e.text;
  if (e.kind == ExprKind::FieldAccess && !e.children.empty() &&
      e.children.front()->kind == ExprKind::This) {
    return e.text;
  }
  return std::nullopt;
}

std::string short_text(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Name:
    case ExprKind::This:
    case ExprKind::Super:
      return e.text;
    case ExprKind::FieldAccess:
      return e.children.empty() ? e.text : short_text(*e.children.front()) + "." + e.text;
    case ExprKind::Call: {
      const Expr* r = e.receiver();
      const std::string base = r ? short_text(*r) : "";
      return (base.empty() ? "" : base + ".") + e.text + "(" +
             (e.children.size() > (r ? 1u : 0u) ? "..." : "") + ")";
    }
    case ExprKind::New:
      return "new " + e.text + "(...)";
    default:
      return {};
  }
}

const Expr* strip_casts(const Expr* e) {
  while (e && e->kind == ExprKind::Cast && !e->children.empty()) e = e->children.front().get();
  return e;
}

class Matcher {
 public:
  explicit Matcher(const KnowledgeTable& table) : table_(table) {
    for (const auto& p : table.acquire_types) acquire_types_.emplace_back(p);
    for (const auto& p : table.ignored_types) ignored_types_.emplace_back(p);
  }

  void statement(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::LocalVar:
        for (const auto& v : s.vars) {
          if (!v.init) continue;
          assigned(v.name, *v.init);
          walk(*v.init);
        }
        break;
      case StmtKind::ForEach:
        if (!s.vars.empty() && s.vars.front().init) walk(*s.vars.front().init);
        break;
      case StmtKind::If:
        if (s.expr) {
          condition(*s.expr);
          walk(*s.expr);
        }
        break;
      default:
        if (s.expr) walk(*s.expr);
        for (const auto& u : s.update) walk(*u);
        break;
    }
  }

  IntentionSet result() const {
    IntentionSet out = found_;
    std::set<std::string> vars;
    for (const auto& i : found_) vars.insert(i.var());
    for (const auto& v : validates_) {
      if (vars.count(v.var())) out.insert(v);
    }
    return out;
  }

 private:
  static bool matches_call(const std::string& pattern, const Expr& call) {
    const auto dot = pattern.rfind('.');
    if (dot == std::string::npos) return call.text == pattern;
    if (call.text != pattern.substr(dot + 1)) return false;
    const Expr* r = call.receiver();
    if (!r) return false;
    const std::string want = pattern.substr(0, dot);
    return (r->kind == ExprKind::Name || r->kind == ExprKind::FieldAccess) && r->text == want;
  }

  static bool any_call(const std::vector<std::string>& patterns, const Expr& call) {
    return std::any_of(patterns.begin(), patterns.end(),
                       [&](const std::string& p) { return matches_call(p, call); });
  }

  bool is_acquire_type(const std::string& type) const {
    const std::string name = simple_type_name(type);
    auto hit = [&](const std::vector<std::regex>& list) {
      return std::any_of(list.begin(), list.end(),
                         [&](const std::regex& r) { return std::regex_match(name, r); });
    };
    return !hit(ignored_types_) && hit(acquire_types_);
  }

  void add(IntentionKind kind, const std::string& var, int line, std::string text) {
    try {
      Intention i(kind, var, line, std::move(text));
      if (kind == IntentionKind::Validate) {
        validates_.push_back(std::move(i));
      } else {
        found_.insert(std::move(i));
      }
    } catch (const std::invalid_argument&) {
      // not a plain variable
    }
  }

  void assigned(const std::string& target, const Expr& value) {
    const Expr* rhs = strip_casts(&value);
    if (!rhs) return;
    if (rhs->kind == ExprKind::New && is_acquire_type(rhs->text)) {
      add(IntentionKind::Acquire, target, rhs->line, short_text(*rhs));
    } else if (rhs->kind == ExprKind::Call && any_call(table_.acquire_calls, *rhs)) {
      add(IntentionKind::Acquire, target, rhs->line, short_text(*rhs));
    }
  }

  void walk(const Expr& e) {
    if (e.kind == ExprKind::Assign && e.text == "=" && e.children.size() == 2) {
      if (auto target = target_name(*e.children[0])) assigned(*target, *e.children[1]);
    }
    if (e.kind == ExprKind::Call) call(e);
    for (const auto& c : e.children) walk(*c);
  }

  void call(const Expr& e) {
    const Expr* r = e.receiver();
    const std::size_t args = e.children.size() - (r ? 1 : 0);
    if (r) {
      if (auto var = target_name(*r)) {
        if (any_call(table_.acquire_receiver_calls, e)) {
          add(IntentionKind::Acquire, *var, e.line, short_text(e));
        }
        if (args == 0 && any_call(table_.release_receiver_calls, e)) {
          add(IntentionKind::Release, *var, e.line, short_text(e));
        }
      }
    }
    if (args == 1 && any_call(table_.release_argument_calls, e)) {
      if (auto var = target_name(*e.children.back())) {
        add(IntentionKind::Release, *var, e.line, short_text(e));
      }
    }
  }

  void condition(const Expr& e) {
    if (e.kind == ExprKind::Binary && (e.text == "==" || e.text == "!=") &&
        table_.null_checks_validate && e.children.size() == 2) {
      const Expr& a = *e.children[0];
      const Expr& b = *e.children[1];
      const Expr* other = a.kind == ExprKind::Null ? &b : b.kind == ExprKind::Null ? &a : nullptr;
      if (other) {
        if (auto var = target_name(*other)) {
          add(IntentionKind::Validate, *var, e.line, "if-condition");
        }
      }
      return;
    }
    if (e.kind == ExprKind::Call) {
      const Expr* r = e.receiver();
      if (r && any_call(table_.validate_receiver_calls, e)) {
        if (auto var = target_name(*r)) {
          add(IntentionKind::Validate, *var, e.line, short_text(e));
        }
      }
      return;
    }
    if (e.kind == ExprKind::Binary || e.kind == ExprKind::Unary) {
      for (const auto& c : e.children) condition(*c);
    }
  }

  const KnowledgeTable& table_;
  std::vector<std::regex> acquire_types_;
  std::vector<std::regex> ignored_types_;
  IntentionSet found_;
  std::vector<Intention> validates_;
};

}  // namespace

IntentionSet rule_based_infer(const MethodSnippet& snippet, const KnowledgeTable& table) {
  Matcher matcher(table);
  for_each_stmt(*snippet.decl().body, [&](const Stmt& s) { matcher.statement(s); });
  return matcher.result();
}

}  // namespace leakscope
