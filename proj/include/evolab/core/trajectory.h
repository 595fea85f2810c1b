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
#include <string>
#include <vector>

#include "evolab/core/jsonl.h"

namespace evolab {

inline constexpr double kDefaultSuccessThreshold = 1.0;

struct TrajectoryStep {
  int index = 0;
  /// Active agent for this step. Constant in the single-agent harness.
  std::string agent_id = "agent-0";
  std::string state_summary;
  std::string action;
  std::string observation;
  int64_t tokens_in = 0;
  int64_t tokens_out = 0;
  /// Share of tokens_in spent on provided memory context.
  int64_t memory_tokens = 0;
  /// Items provided to the agent before it acted in this step.
  std::vector<std::string> memory_ids;

  bool operator==(const TrajectoryStep&) const = default;
};

/// Complete record of one task episode.
struct TrajectoryData {
  std::string task_id;
  std::string family_id;
  std::string query;
  std::vector<TrajectoryStep> steps;
  double reward = 0.0;
  bool success = false;
  int64_t total_tokens = 0;
  /// Seconds in real mode, steps in simulation.
  double wall_delay = 0.0;
  /// Distinct item ids consumed during the episode, first-seen order.
  std::vector<std::string> provided_memory_ids;
  /// Parallel to provided_memory_ids: the lookup key each item hinted at
  /// when it was provided (empty if none).
  std::vector<std::string> provided_memory_keys;
  std::string prediction;
  std::string gold_answer;
  /// Provider ingest counter when the episode started.
  int64_t memory_version = 0;

  bool operator==(const TrajectoryData&) const = default;
};

int64_t sum_step_tokens(const TrajectoryData& trajectory);

/// Recomputes total_tokens and success from steps and reward.
void finalize(TrajectoryData& trajectory,
              double success_threshold = kDefaultSuccessThreshold);

/// Throws ValidationError if step indices are not contiguous from 0, token
/// counts are negative, reward is outside [0,1], total_tokens disagrees with
/// the steps, or the id lists are not parallel.
void check_trajectory(const TrajectoryData& trajectory);

void to_json(Json& j, const TrajectoryStep& step);
void from_json(const Json& j, TrajectoryStep& step);
void to_json(Json& j, const TrajectoryData& trajectory);
void from_json(const Json& j, TrajectoryData& trajectory);

}  // namespace evolab
