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

#include "evolab/eval/scoring.h"

#include <cctype>

#include "evolab/core/errors.h"
#include "evolab/llm/prompts.h"

namespace evolab {

std::string normalize_answer(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  if (out.size() >= 2) {
    const char a = out.front();
    const char b = out.back();
    if ((a == '"' && b == '"') || (a == '\'' && b == '\'')) {
      out = normalize_answer(std::string_view(out).substr(1, out.size() - 2));
    }
  }
  return out;
}

bool score_exact(std::string_view prediction, std::string_view gold) {
  return normalize_answer(prediction) == normalize_answer(gold);
}

std::optional<bool> parse_verdict(std::string_view reply) {
  std::string upper;
  for (unsigned char c : reply) upper.push_back(static_cast<char>(std::toupper(c)));
  auto is_word = [&](std::size_t pos, std::size_t len) {
    const bool left = pos == 0 || !std::isalpha(static_cast<unsigned char>(upper[pos - 1]));
    const bool right = pos + len >= upper.size() ||
                       !std::isalpha(static_cast<unsigned char>(upper[pos + len]));
    return left && right;
  };
  auto find_word = [&](std::string_view word) {
    for (auto pos = upper.find(word); pos != std::string::npos; pos = upper.find(word, pos + 1)) {
      if (is_word(pos, word.size())) return true;
    }
    return false;
  };
  if (find_word("INCORRECT")) return false;
  if (find_word("CORRECT")) return true;
  return std::nullopt;
}

JudgeResult score_judge(Gateway& gateway, const std::string& question,
                        const std::string& prediction, const std::string& gold) {
  JudgeResult result;
  CompletionParams params;
  params.tag = "judge";
  params.max_tokens = 8;
  std::string reply;
  try {
    reply = gateway
                .complete(render_prompt("judge.v1", {{"QUESTION", question},
                                                     {"PREDICTION", prediction},
                                                     {"GOLD", gold}}),
                          params)
                .text;
  } catch (const GatewayError& e) {
    result.error = true;
    result.detail = e.what();
    return result;
  }
  const auto verdict = parse_verdict(reply);
  result.correct = verdict.value_or(false);
  if (!verdict) {
    result.parse_warning = true;
    result.detail = "unparseable judge reply: " + reply;
  }
  return result;
}

}  // namespace evolab
