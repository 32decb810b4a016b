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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "leakscope/detector.hpp"
#include "leakscope/intent.hpp"
#include "leakscope/prompt.hpp"
#include "leakscope/rules.hpp"
#include "leakscope/snippet.hpp"

namespace py = pybind11;
namespace ls = leakscope;

namespace {

ls::IntentionSet to_set(const std::vector<ls::Intention>& items) {
  ls::IntentionSet out;
  for (const auto& i : items) out.insert(i);
  return out;
}

std::vector<ls::Intention> to_list(const ls::IntentionSet& set) { return {set.begin(), set.end()}; }

py::dict report_dict(const ls::LeakReport& r) {
  py::dict d;
  d["resource"] = r.resource;
  d["acquire_lines"] = r.acquire_lines;
  d["witness_lines"] = r.witness_lines;
  d["witness"] = r.witness;
  d["method_id"] = r.method_id;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Resource leak detection for Java methods.";

  py::register_exception<ls::java::SyntaxError>(m, "SyntaxError", PyExc_ValueError);
  py::register_exception<ls::UnsupportedConstruct>(m, "UnsupportedConstruct", PyExc_ValueError);
  py::register_exception<ls::PathExplosion>(m, "PathExplosion", PyExc_RuntimeError);

  py::enum_<ls::IntentionKind>(m, "IntentionKind")
      .value("ACQUIRE", ls::IntentionKind::Acquire)
      .value("RELEASE", ls::IntentionKind::Release)
      .value("VALIDATE", ls::IntentionKind::Validate);

  py::class_<ls::Intention>(m, "Intention")
      .def(py::init<ls::IntentionKind, std::string_view, int, std::string>(), py::arg("kind"),
           py::arg("var"), py::arg("lineno"), py::arg("call_text") = "")
      .def_property_readonly("kind", &ls::Intention::kind)
      .def_property_readonly("var", &ls::Intention::var)
      .def_property_readonly("lineno", &ls::Intention::lineno)
      .def_property_readonly("call_text", &ls::Intention::call_text)
      .def("__eq__", [](const ls::Intention& a, const ls::Intention& b) { return a == b; })
      .def("__lt__", [](const ls::Intention& a, const ls::Intention& b) { return a < b; })
      .def("__hash__",
           [](const ls::Intention& i) {
             return py::hash(py::make_tuple(static_cast<int>(i.kind()), i.var(), i.lineno()));
           })
      .def("__repr__", [](const ls::Intention& i) { return ls::to_string(i); });

  py::class_<ls::MethodSnippet>(m, "MethodSnippet")
      .def_property_readonly("source", &ls::MethodSnippet::source)
      .def_property_readonly("first_line", &ls::MethodSnippet::first_line)
      .def_property_readonly("last_line", &ls::MethodSnippet::last_line)
      .def_property_readonly("name", &ls::MethodSnippet::name)
      .def_property_readonly("method_id", &ls::MethodSnippet::method_id)
      .def_property_readonly("hash", &ls::MethodSnippet::hash)
      .def_property_readonly("declared_resources",
                             [](const ls::MethodSnippet& s) {
                               std::vector<std::string> vars;
                               for (const auto& r : s.declared_resources()) vars.push_back(r.var);
                               return vars;
                             })
      .def("numbered_code", &ls::MethodSnippet::numbered_code);

  m.def("parse_method", &ls::parse_method, py::arg("source"), py::arg("first_line") = 1,
        py::arg("method_id") = "");

  m.def(
      "parse_answer", [](std::string_view text) { return to_list(ls::parse_answer(text)); },
      py::arg("text"), "Intentions found in free-form provider output, sorted.");
  m.def(
      "render_answer", [](const std::vector<ls::Intention>& items) {
        return ls::render_answer(to_set(items));
      },
      py::arg("intentions"));
  m.def(
      "rule_based_infer",
      [](const ls::MethodSnippet& s) { return to_list(ls::rule_based_infer(s)); },
      py::arg("snippet"));
  m.def(
      "render_prompt",
      [](const ls::MethodSnippet& s) { return ls::render_prompt(ls::make_request(s)); },
      py::arg("snippet"));
  m.def(
      "dump_cfg", [](const ls::MethodSnippet& s) { return ls::build_cfg(s).dump(); },
      py::arg("snippet"));
  m.def(
      "paths",
      [](const ls::MethodSnippet& s, const std::vector<ls::Intention>& items, std::size_t max_paths) {
        const auto cfg = ls::build_cfg(s);
        const auto all = ls::enumerate(cfg, to_set(items), {max_paths});
        std::vector<std::string> out;
        for (const auto& p : all) out.push_back(ls::format_intervals(cfg, p, all));
        return out;
      },
      py::arg("snippet"), py::arg("intentions"), py::arg("max_paths") = ls::kDefaultMaxPaths,
      "Enumerated paths in interval notation.");
  m.def(
      "analyze",
      [](const ls::MethodSnippet& s, const std::vector<ls::Intention>& items, std::size_t max_paths) {
        py::list out;
        for (const auto& r : ls::analyze_method(s, to_set(items), {max_paths})) {
          out.append(report_dict(r));
        }
        return out;
      },
      py::arg("snippet"), py::arg("intentions"), py::arg("max_paths") = ls::kDefaultMaxPaths,
      "Leak reports as dictionaries.");
}
