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

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "evolab/core/request.h"
#include "evolab/core/trajectory.h"
#include "evolab/inner/task.h"
#include "evolab/llm/gateway.h"

namespace evolab {

/// Observation for a key the task's tool table does not define.
inline constexpr std::string_view kNoSuchKey = "NO_SUCH_KEY";

struct AgentTurn {
  /// "lookup(<key>)", or "give_up" when the agent has nothing left to try.
  std::string action;
  int64_t tokens_in = 0;
  int64_t tokens_out = 0;
};

/// Everything an agent sees before acting.
struct AgentView {
  const TaskSpec& task;
  const std::vector<TrajectoryStep>& history;
  const MemoryResponse& memory;
  /// Memory rendered as the agent's context text.
  const std::string& memory_text;
};

class Agent {
 public:
  virtual ~Agent() = default;

  /// Chooses one action and meters its usage into `gateway` under tag
  /// "agent.step". May throw; the harness then records a failed episode.
  virtual AgentTurn act(const AgentView& view, Gateway& gateway) = 0;

  /// True when delay is wall-clock seconds rather than step count.
  virtual bool wall_clock_delay() const { return false; }
};

/// Keys suggested by memory: every lookup(<key>) whose key is in `table`
/// and which is not followed by " -> NOT_FOUND", in item order.
std::vector<std::string> hinted_keys(const std::vector<MemoryItem>& items,
                                     const std::map<std::string, std::string>& table);
/// Keys memory reports as lookup(<key>) -> NOT_FOUND.
std::set<std::string> refuted_keys(const std::vector<MemoryItem>& items);
/// First hinted key of a single item, "" if none.
std::string item_hint(const MemoryItem& item, const std::map<std::string, std::string>& table);

/// "[<kind>] <content>" per item, one per line.
std::string render_memory(const MemoryResponse& memory);

/// Scripted lookup agent. Tries keys hinted by memory first (in retrieval
/// order), then the remaining keys in a seeded order that depends only on
/// the key text, then keys memory reports as NOT_FOUND. Token counts are
/// ceil(bytes / 4) of the text it reads and writes.
class SimAgent final : public Agent {
 public:
  explicit SimAgent(uint64_t seed = 0) : seed_(seed) {}

  AgentTurn act(const AgentView& view, Gateway& gateway) override;

  /// Keys of `task` in exploration order, ignoring memory.
  std::vector<std::string> exploration_order(const TaskSpec& task) const;

 private:
  uint64_t seed_;
};

/// Agent backed by the gateway ("agent.v1" prompt, tag "agent.step").
class GatewayAgent final : public Agent {
 public:
  AgentTurn act(const AgentView& view, Gateway& gateway) override;
  bool wall_clock_delay() const override { return true; }
};

}  // namespace evolab
