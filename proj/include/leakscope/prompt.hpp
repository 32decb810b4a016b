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

#include <string>
#include <string_view>

#include "leakscope/snippet.hpp"

namespace leakscope {

inline constexpr std::string_view kTemplateId = "leakscope-intent-v1";

struct PromptRequest {
  std::string numbered_code;  // "N: " prefixed lines
  std::string template_id = std::string(kTemplateId);
};

PromptRequest make_request(const MethodSnippet& snippet);

/// Task description, five instructions, the output format, then the code.
/// The numbered code forms the final lines. Throws std::invalid_argument on
/// empty code or an unknown template id.
std::string render_prompt(const PromptRequest& request);

}  // namespace leakscope
