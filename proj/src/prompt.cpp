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

#include "leakscope/prompt.hpp"

#include <stdexcept>

namespace leakscope {

namespace {

constexpr std::string_view kTemplate =
    "You are reviewing a Java method for resource leaks. Identify where the "
    "method acquires resources, where it releases them, and where it checks "
    "that a resource is still reachable before using or releasing it.\n"
    "\n"
    "Work through the following steps in order:\n"
    "1. Infer the type of every object the code creates, receives, or stores.\n"
    "2. Decide which of those types are leakable resources that must be "
    "explicitly released (streams, readers, writers, sockets, database "
    "cursors and connections, locks, wake locks, media players, and similar).\n"
    "3. Find every statement that acquires one of those resources and the "
    "variable that stores it.\n"
    "4. Find every statement that releases one of those resources.\n"
    "5. Find every condition that validates whether one of those resources is "
    "reachable (for example a null check or an is-open check) before it is "
    "used or released.\n"
    "\n"
    "Output format: answer with one line per finding and nothing else. Use "
    "exactly these forms, where <N> is the line number shown before the code "
    "line:\n"
    "line <N>: <API call> acquires <resource variable> resource\n"
    "line <N>: <API call> releases <resource variable> resource\n"
    "line <N>: <condition> validates reachability of <resource variable> resource\n"
    "\n"
    "Code:\n";

}  // namespace

PromptRequest make_request(const MethodSnippet& snippet) {
  PromptRequest request;
  request.numbered_code = snippet.numbered_code();
  return request;
}

std::string render_prompt(const PromptRequest& request) {
  if (request.template_id != kTemplateId) {
    throw std::invalid_argument("unknown prompt template: " + request.template_id);
  }
  if (request.numbered_code.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw std::invalid_argument("prompt code is empty");
  }
  std::string prompt(kTemplate);
  prompt += request.numbered_code;
  while (!prompt.empty() && prompt.back() == '\n') prompt.pop_back();
  return prompt;
}

}  // namespace leakscope
