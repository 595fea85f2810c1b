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
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "evolab/core/jsonl.h"

namespace evolab {

/// One question plus the hidden facts of its simulated environment. Every
/// key of tool_table is a callable lookup; only the family's solution key
/// returns the answer.
struct TaskSpec {
  std::string task_id;
  std::string family_id;
  std::string query;
  std::string gold_answer;
  std::map<std::string, std::string> tool_table;
  int max_steps = 1;

  bool operator==(const TaskSpec&) const = default;
};

/// Throws ValidationError when max_steps < 1, ids are empty, or no table
/// entry yields the gold answer.
void check_task(const TaskSpec& task);

void to_json(Json& j, const TaskSpec& task);
void from_json(const Json& j, TaskSpec& task);

/// tasks.jsonl; load validates every record and rejects duplicate ids.
std::vector<TaskSpec> load_tasks(const std::filesystem::path& path);
void save_tasks(const std::filesystem::path& path, const std::vector<TaskSpec>& tasks);

struct TaskBatch {
  int iteration = 0;
  std::vector<TaskSpec> new_tasks;
  /// Drawn from the previous iteration's batch; run after new_tasks.
  std::vector<TaskSpec> reused_tasks;

  /// new_tasks followed by reused_tasks.
  std::vector<TaskSpec> ordered() const;
  std::size_t size() const { return new_tasks.size() + reused_tasks.size(); }
};

/// Samples n_new tasks without replacement from the pool minus the previous
/// batch and n_reused tasks uniformly from the previous batch. An empty
/// previous batch (iteration 0) yields n_new + n_reused fresh tasks.
/// Throws ValidationError naming the required size when either source is
/// too small.
TaskBatch compose_batch(const std::vector<TaskSpec>& pool,
                        const TaskBatch* previous, int n_new, int n_reused,
                        uint64_t seed, int iteration);

struct TaskGenConfig {
  int families = 24;
  int tasks_per_family = 10;
  /// Callable keys per family; one of them is the solution key.
  int keys_per_family = 8;
  int max_steps = 6;
  uint64_t seed = 7;
};

/// Synthetic lookup-question pool. Tasks of one family share the phrasing,
/// the candidate keys and the solution key; entities and answers differ.
std::vector<TaskSpec> generate_tasks(const TaskGenConfig& config);

}  // namespace evolab
