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

#include "evolab/core/trajectory.h"

#include <cmath>

#include "evolab/core/errors.h"

namespace evolab {

int64_t sum_step_tokens(const TrajectoryData& trajectory) {
  int64_t total = 0;
  for (const auto& s : trajectory.steps) total += s.tokens_in + s.tokens_out;
  return total;
}

void finalize(TrajectoryData& trajectory, double success_threshold) {
  for (std::size_t i = 0; i < trajectory.steps.size(); ++i) {
    trajectory.steps[i].index = static_cast<int>(i);
  }
  trajectory.total_tokens = sum_step_tokens(trajectory);
  trajectory.success = trajectory.reward >= success_threshold;
}

void check_trajectory(const TrajectoryData& trajectory) {
  const std::string where = "trajectory '" + trajectory.task_id + "': ";
  for (std::size_t i = 0; i < trajectory.steps.size(); ++i) {
    const auto& s = trajectory.steps[i];
    if (s.index != static_cast<int>(i)) {
      throw ValidationError(where + "step indices must be contiguous from 0");
    }
    if (s.tokens_in < 0 || s.tokens_out < 0 || s.memory_tokens < 0) {
      throw ValidationError(where + "negative token count at step " +
                            std::to_string(i));
    }
  }
  if (!(trajectory.reward >= 0.0 && trajectory.reward <= 1.0)) {
    throw ValidationError(where + "reward outside [0,1]");
  }
  if (trajectory.total_tokens != sum_step_tokens(trajectory)) {
    throw ValidationError(where + "total_tokens does not match step sum");
  }
  if (trajectory.provided_memory_keys.size() !=
      trajectory.provided_memory_ids.size()) {
    throw ValidationError(where + "provided memory keys/ids not parallel");
  }
}

void to_json(Json& j, const TrajectoryStep& step) {
  j = Json{{"index", step.index},
           {"agent_id", step.agent_id},
           {"state_summary", step.state_summary},
           {"action", step.action},
           {"observation", step.observation},
           {"tokens_in", step.tokens_in},
           {"tokens_out", step.tokens_out},
           {"memory_tokens", step.memory_tokens},
           {"memory_ids", step.memory_ids}};
}

void from_json(const Json& j, TrajectoryStep& step) {
  step.index = j.at("index").get<int>();
  step.agent_id = j.value("agent_id", std::string("agent-0"));
  step.state_summary = j.value("state_summary", std::string());
  step.action = j.value("action", std::string());
  step.observation = j.value("observation", std::string());
  step.tokens_in = j.value("tokens_in", int64_t{0});
  step.tokens_out = j.value("tokens_out", int64_t{0});
  step.memory_tokens = j.value("memory_tokens", int64_t{0});
  step.memory_ids = j.value("memory_ids", std::vector<std::string>{});
}

void to_json(Json& j, const TrajectoryData& t) {
  j = Json{{"task_id", t.task_id},
           {"family_id", t.family_id},
           {"query", t.query},
           {"steps", t.steps},
           {"reward", t.reward},
           {"success", t.success},
           {"total_tokens", t.total_tokens},
           {"wall_delay", t.wall_delay},
           {"provided_memory_ids", t.provided_memory_ids},
           {"provided_memory_keys", t.provided_memory_keys},
           {"prediction", t.prediction},
           {"gold_answer", t.gold_answer},
           {"memory_version", t.memory_version}};
}

void from_json(const Json& j, TrajectoryData& t) {
  t.task_id = j.at("task_id").get<std::string>();
  t.family_id = j.value("family_id", std::string());
  t.query = j.value("query", std::string());
  t.steps = j.value("steps", std::vector<TrajectoryStep>{});
  t.reward = j.value("reward", 0.0);
  t.success = j.value("success", false);
  t.total_tokens = j.value("total_tokens", int64_t{0});
  t.wall_delay = j.value("wall_delay", 0.0);
  t.provided_memory_ids =
      j.value("provided_memory_ids", std::vector<std::string>{});
  t.provided_memory_keys =
      j.value("provided_memory_keys", std::vector<std::string>{});
  t.prediction = j.value("prediction", std::string());
  t.gold_answer = j.value("gold_answer", std::string());
  t.memory_version = j.value("memory_version", int64_t{0});
}

}  // namespace evolab
