// Copyright 2026 The EvoLab Authors
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

#include <optional>
#include <string>
#include <string_view>

#include "evolab/llm/gateway.h"

namespace evolab {

/// Trim, ASCII case-fold, collapse internal whitespace runs to one space and
/// strip one layer of matching surrounding quotes. Punctuation is kept.
std::string normalize_answer(std::string_view text);

/// normalize_answer(prediction) == normalize_answer(gold).
bool score_exact(std::string_view prediction, std::string_view gold);

struct JudgeResult {
  bool correct = false;
  /// The reply had no CORRECT/INCORRECT verdict token.
  bool parse_warning = false;
  /// The gateway call failed; `detail` carries the cause.
  bool error = false;
  std::string detail;
};

/// One "judge"-tagged gateway call with the fixed rubric prompt. Never
/// throws on gateway failure.
JudgeResult score_judge(Gateway& gateway, const std::string& question,
                        const std::string& prediction, const std::string& gold);

/// Verdict token in a judge reply, case-insensitive and whole-word.
/// INCORRECT is matched first because it contains CORRECT.
std::optional<bool> parse_verdict(std::string_view reply);

}  // namespace evolab
