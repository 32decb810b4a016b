# Copyright 2026 The LeakScope Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Resource leak detection for Java methods driven by resource intentions."""

from ._core import (
    Intention,
    IntentionKind,
    MethodSnippet,
    PathExplosion,
    SyntaxError,
    UnsupportedConstruct,
    analyze,
    dump_cfg,
    parse_answer,
    parse_method,
    paths,
    render_answer,
    render_prompt,
    rule_based_infer,
)

ACQUIRE = IntentionKind.ACQUIRE
RELEASE = IntentionKind.RELEASE
VALIDATE = IntentionKind.VALIDATE

__version__ = "0.1.0"

__all__ = [
    "ACQUIRE",
    "RELEASE",
    "VALIDATE",
    "Intention",
    "IntentionKind",
    "MethodSnippet",
    "PathExplosion",
    "SyntaxError",
    "UnsupportedConstruct",
    "analyze",
    "dump_cfg",
    "parse_answer",
    "parse_method",
    "paths",
    "render_answer",
    "render_prompt",
    "rule_based_infer",
]
