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

#include "evolab/inner/agent.h"

#include <algorithm>

#include "evolab/core/errors.h"
#include "evolab/core/hash.h"
#include "evolab/genotype/strategies.h"
#include "evolab/llm/prompts.h"

namespace evolab {
namespace {

constexpr std::string_view kCall = "lookup(";
constexpr std::string_view kMiss = " -> NOT_FOUND";

/// Visits every lookup(<key>) in `text` with whether it is marked NOT_FOUND.
template <typename Fn>
void scan_calls(const std::string& text, Fn&& fn) {
  for (auto pos = text.find(kCall); pos != std::string::npos; pos = text.find(kCall, pos + 1)) {
    const auto start = pos + kCall.size();
    const auto close = text.find(')', start);
    if (close == std::string::npos) return;
    const std::string key = text.substr(start, close - start);
    fn(key, text.compare(close + 1, kMiss.size(), kMiss) == 0);
  }
}

std::string render_history(const std::vector<TrajectoryStep>& history) {
  std::string out;
  for (const auto& s : history) {
    if (!out.empty()) out += "\n";
    out += s.action + " -> " + s.observation;
  }
  return out;
}

std::set<std::string> tried_keys(const std::vector<TrajectoryStep>& history) {
  std::set<std::string> out;
  for (const auto& s : history) out.insert(action_argument(s.action));
  return out;
}

}  // namespace

std::vector<std::string> hinted_keys(const std::vector<MemoryItem>& items,
                                     const std::map<std::string, std::string>& table) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    scan_calls(item.content, [&](const std::string& key, bool missed) {
      if (!missed && table.contains(key) &&
          std::find(out.begin(), out.end(), key) == out.end()) {
        out.push_back(key);
      }
    });
  }
  return out;
}

std::set<std::string> refuted_keys(const std::vector<MemoryItem>& items) {
  std::set<std::string> out;
  for (const auto& item : items) {
    scan_calls(item.content, [&](const std::string& key, bool missed) {
      if (missed) out.insert(key);
    });
  }
  return out;
}

std::string item_hint(const MemoryItem& item, const std::map<std::string, std::string>& table) {
  std::string hint;
  scan_calls(item.content, [&](const std::string& key, bool missed) {
    if (hint.empty() && !missed && table.contains(key)) hint = key;
  });
  return hint;
}

std::string render_memory(const MemoryResponse& memory) {
  std::string out;
  for (const auto& item : memory.items) {
    if (!out.empty()) out += "\n";
    out += "[" + std::string(to_string(item.kind)) + "] " + item.content;
  }
  return out;
}

std::vector<std::string> SimAgent::exploration_order(const TaskSpec& task) const {
  std::vector<std::string> keys;
  for (const auto& [key, value] : task.tool_table) keys.push_back(key);
  std::sort(keys.begin(), keys.end(), [&](const std::string& a, const std::string& b) {
    const uint64_t ha = stable_hash(a, seed_);
    const uint64_t hb = stable_hash(b, seed_);
    return ha != hb ? ha < hb : a < b;
  });
  return keys;
}

AgentTurn SimAgent::act(const AgentView& view, Gateway& gateway) {
  const auto tried = tried_keys(view.history);
  const auto refuted = refuted_keys(view.memory.items);
  std::string choice;
  for (const auto& key : hinted_keys(view.memory.items, view.task.tool_table)) {
    if (!tried.contains(key)) {
      choice = key;
      break;
    }
  }
  if (choice.empty()) {
    const auto order = exploration_order(view.task);
    for (int pass = 0; pass < 2 && choice.empty(); ++pass) {
      for (const auto& key : order) {
        if (tried.contains(key) || refuted.contains(key) != (pass == 1)) continue;
        choice = key;
        break;
      }
    }
  }
  AgentTurn turn;
  turn.action = choice.empty() ? "give_up" : std::string(kCall) + choice + ")";
  turn.tokens_in = approx_tokens(view.task.query + "\n" + render_history(view.history) + "\n" +
                                 view.memory_text);
  turn.tokens_out = approx_tokens(turn.action);
  gateway.record("agent.step", turn.tokens_in, turn.tokens_out);
  return turn;
}

AgentTurn GatewayAgent::act(const AgentView& view, Gateway& gateway) {
  std::string keys;
  for (const auto& [key, value] : view.task.tool_table) keys += (keys.empty() ? "" : ", ") + key;
  const std::string history = render_history(view.history);
  const std::string prompt =
      render_prompt("agent.v1", {{"QUERY", view.task.query},
                                 {"CANDIDATE_KEYS", keys},
                                 {"MEMORY", view.memory_text.empty() ? "none" : view.memory_text},
                                 {"HISTORY", history.empty() ? "none" : history}});
  CompletionParams params;
  params.tag = "agent.step";
  params.max_tokens = 64;
  const Completion reply = gateway.complete(prompt, params);
  const auto pos = reply.text.find(kCall);
  const auto close = pos == std::string::npos ? pos : reply.text.find(')', pos);
  if (close == std::string::npos) {
    throw Error("agent reply has no lookup(<key>) call: " + reply.text);
  }
  AgentTurn turn;
  turn.action = reply.text.substr(pos, close - pos + 1);
  turn.tokens_in = reply.usage.tokens_in;
  turn.tokens_out = reply.usage.tokens_out;
  return turn;
}

}  // namespace evolab
