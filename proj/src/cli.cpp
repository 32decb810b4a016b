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

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "leakscope/detector.hpp"
#include "leakscope/eval.hpp"
#include "leakscope/java_parser.hpp"
#include "leakscope/parallel.hpp"

namespace leakscope {

namespace fs = std::filesystem;

namespace {

struct Task {
  std::string file;
  std::string method_id;
  std::string qualified_name;
  std::string source;
  int first_line = 1;
};

struct TaskResult {
  std::vector<LeakReport> reports;
  std::string error;
  std::string dump;
};

bool read_text(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return static_cast<bool>(in) || in.eof();
}

bool is_number(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

bool selected(const java::MethodLocation& m, const std::string& selector) {
  if (selector.empty()) return true;
  if (is_number(selector)) {
    const int line = std::stoi(selector);
    return m.first_line <= line && line <= m.last_line;
  }
  const std::string qualified = m.enclosing_type.empty() ? m.name : m.enclosing_type + "." + m.name;
  return m.name == selector || qualified == selector ||
         (qualified.size() > selector.size() &&
          qualified.compare(qualified.size() - selector.size(), selector.size(), selector) == 0 &&
          qualified[qualified.size() - selector.size() - 1] == '.');
}

std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs,
                                       std::vector<std::string>& errors) {
  std::vector<std::string> files;
  for (const auto& input : inputs) {
    std::error_code ec;
    if (fs::is_directory(input, ec)) {
      std::vector<std::string> found;
      for (auto it = fs::recursive_directory_iterator(input, ec);
           !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
        if (it->is_regular_file(ec) && it->path().extension() == ".java") {
          found.push_back(it->path().string());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(input, ec)) {
      files.push_back(input);
    } else {
      errors.push_back(input + ": error: no such file or directory");
    }
  }
  return files;
}

std::string join_lines(const std::vector<int>& lines) {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(lines[i]);
  }
  return out;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<std::string> errors;
  if (config.max_paths < 1) {
    err << "error: --max-paths must be at least 1\n";
    return kExitError;
  }
  const auto files = expand_inputs(config.inputs, errors);

  std::vector<Task> tasks;
  for (const auto& file : files) {
    std::string text;
    if (!read_text(file, text)) {
      errors.push_back(file + ": error: cannot read file");
      continue;
    }
    std::vector<java::MethodLocation> methods;
    try {
      methods = java::find_methods(text);
    } catch (const java::SyntaxError& e) {
      errors.push_back(file + ":" + std::to_string(e.line()) + ": error: " + e.message());
      continue;
    }
    for (const auto& m : methods) {
      if (!selected(m, config.method)) continue;
      Task t;
      t.file = file;
      t.qualified_name = m.enclosing_type.empty() ? m.name : m.enclosing_type + "." + m.name;
      t.method_id = file + ":" + t.qualified_name + ":" + std::to_string(m.first_line);
      t.source = text.substr(m.begin, m.end - m.begin);
      t.first_line = m.first_line;
      tasks.push_back(std::move(t));
    }
  }
  if (tasks.empty() && !config.method.empty() && errors.empty()) {
    errors.push_back("error: no method matches '" + config.method + "'");
  }

  std::unique_ptr<Gateway> gateway;
  if (!tasks.empty()) {
    try {
      gateway = std::make_unique<Gateway>(make_provider(config.provider), config.provider.cache_dir);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitError;
    }
  }

  std::vector<TaskResult> results(tasks.size());
  parallel_for(tasks.size(), config.jobs, [&](std::size_t i) {
    const Task& t = tasks[i];
    TaskResult& r = results[i];
    try {
      const MethodSnippet snippet = parse_method(t.source, t.first_line, t.method_id);
      const IntentionSet intents = gateway->infer(snippet);
      Analysis a = analyze(snippet, intents, {config.max_paths});
      r.reports = std::move(a.reports);
      if (config.dump_cfg) r.dump += "# cfg " + t.method_id + "\n" + a.cfg.dump();
      if (config.dump_paths) {
        r.dump += "# paths " + t.method_id + "\n";
        for (const auto& p : a.paths) {
          r.dump += "path " + std::to_string(p.id) + " " + format_intervals(a.cfg, p, a.paths) + "\n";
        }
      }
    } catch (const java::SyntaxError& e) {
      r.error = t.file + ":" + std::to_string(e.line()) + ": error: " + e.message();
    } catch (const UnsupportedConstruct& e) {
      r.error = t.file + ":" + std::to_string(e.line()) + ": error: unsupported construct: " +
                e.construct();
    } catch (const std::exception& e) {
      r.error = t.file + ":" + std::to_string(t.first_line) + ": error: " + e.what();
    }
  });

  std::size_t leaks = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const TaskResult& r = results[i];
    if (!r.dump.empty()) err << r.dump;
    if (!r.error.empty()) errors.push_back(r.error);
    for (const auto& report : r.reports) {
      ++leaks;
      if (config.format == OutputFormat::Json) {
        out << to_json(report) << '\n';
      } else {
        out << tasks[i].file << ':'
            << (report.acquire_lines.empty() ? tasks[i].first_line : report.acquire_lines.front())
            << ": leak: '" << report.resource << "' acquired at line "
            << join_lines(report.acquire_lines) << " in " << tasks[i].qualified_name
            << " may not be released on path " << report.witness << '\n';
      }
    }
  }
  for (const auto& e : errors) err << e << '\n';
  if (!errors.empty()) return kExitError;
  return leaks > 0 ? kExitLeaks : kExitClean;
}

int run_eval(const EvalConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto pairs = load_dataset(config.dataset);
    Gateway gateway(make_provider(config.provider), config.provider.cache_dir);
    const bool with_truth = !pairs.empty() && std::all_of(pairs.begin(), pairs.end(),
                                                          [](const EvalPair& p) {
                                                            return p.has_ground_truth();
                                                          });
    std::optional<IntentionMetrics> im;
    if (with_truth) im = eval_intentions(pairs, gateway, config.jobs);
    const DetectionMetrics dm = eval_detection(pairs, gateway, {config.max_paths}, config.jobs);
    out << (config.format == OutputFormat::Json ? format_report_json(dm, im) : format_report(dm, im));
    for (const auto& w : dm.warnings) err << "warning: " << w << '\n';
    return kExitClean;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Detects resource leaks in Java methods from inferred resource intentions."};
  app.set_version_flag("--version", "leakscope 0.1.0");

  RunConfig config;
  std::string provider = "rules";
  std::string format = "text";
  int backoff_ms = 1000;

  auto add_provider_flags = [&](CLI::App& cmd, ProviderConfig& pc) {
    cmd.add_option("--provider", provider, "Intention provider")
        ->check(CLI::IsMember({"remote", "rules", "fixture"}))
        ->capture_default_str();
    cmd.add_option("--fixture-file", pc.fixture_file, "Canned answers for --provider fixture");
    cmd.add_option("--model", pc.model, "Model name for --provider remote")->capture_default_str();
    cmd.add_option("--endpoint", pc.endpoint, "Chat-completion URL for --provider remote")
        ->capture_default_str();
    cmd.add_option("--cache-dir", pc.cache_dir, "Directory for cached provider answers");
    cmd.add_option("--rate-limit", pc.rate_limit_per_minute, "Remote requests per minute (0 = off)");
    cmd.add_option("--timeout", pc.timeout_seconds, "Remote request timeout in seconds")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--retry-backoff-ms", backoff_ms, "Initial retry backoff")
        ->check(CLI::NonNegativeNumber);
    cmd.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd.add_option("--max-paths", config.max_paths, "Path explosion ceiling")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--jobs,-j", config.jobs, "Methods analyzed concurrently")
        ->check(CLI::PositiveNumber);
  };

  app.add_option("--input,-i", config.inputs, "Java files or directories");
  app.add_option("--method,-m", config.method, "Method name or a line inside it");
  add_provider_flags(app, config.provider);
  app.add_flag("--dump-cfg", config.dump_cfg, "Print each control-flow graph to stderr");
  app.add_flag("--dump-paths", config.dump_paths, "Print each enumerated path to stderr");
  app.allow_extras(false);

  EvalConfig eval_config;
  auto* eval = app.add_subcommand("eval", "Replay a buggy/fixed benchmark dataset");
  eval->add_option("--dataset,-d", eval_config.dataset, "JSON-lines dataset")->required();
  add_provider_flags(*eval, eval_config.provider);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kExitClean : kExitError;
  }

  auto finish_provider = [&](ProviderConfig& pc) {
    pc.kind = *provider_kind_from_string(provider);
    pc.initial_backoff = std::chrono::milliseconds(backoff_ms);
  };
  const OutputFormat fmt = format == "json" ? OutputFormat::Json : OutputFormat::Text;

  if (*eval) {
    finish_provider(eval_config.provider);
    eval_config.format = fmt;
    eval_config.max_paths = config.max_paths;
    eval_config.jobs = config.jobs;
    return run_eval(eval_config, out, err);
  }
  if (config.inputs.empty()) {
    err << "error: --input is required\n";
    return kExitError;
  }
  finish_provider(config.provider);
  if (config.provider.kind == ProviderKind::Fixture && config.provider.fixture_file.empty()) {
    err << "error: --provider fixture needs --fixture-file\n";
    return kExitError;
  }
  config.format = fmt;
  return run(config, out, err);
}

}  // namespace leakscope
