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

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evolab/core/provider.h"
#include "evolab/core/trajectory.h"
#include "evolab/genotype/genotype.h"
#include "evolab/inner/agent.h"
#include "evolab/inner/feedback.h"
#include "evolab/inner/task.h"
#include "evolab/llm/gateway.h"

namespace evolab {

enum class RunMode { kOnline, kOffline };

std::string_view to_string(RunMode mode);
RunMode parse_run_mode(std::string_view text);

inline constexpr int kDefaultMemoryBudget = 8;

struct EpisodeOptions {
  /// max_items passed with every memory request.
  int memory_budget = kDefaultMemoryBudget;
  double success_threshold = kDefaultSuccessThreshold;
  /// Online: record the outcome, ingest the trajectory and run manage() on
  /// the provider's cadence after the episode.
  bool ingest = true;
};

struct EpisodeResult {
  TrajectoryData trajectory;
  FeedbackVector feedback;
  std::optional<IngestResult> ingest;
  std::optional<ManageReport> manage;
  /// Agent or provider failure that ended the episode early.
  std::string error;
};

/// One episode: each step requests memory (planning at step 0, execution
/// afterwards), lets the agent act and observes the tool. The episode ends
/// when a lookup returns a value, the agent gives up, or max_steps is spent.
/// cost is this gateway's cost-unit delta across the episode including
/// ingestion and management; delay is the step count (or wall seconds for
/// wall-clock agents). Throws ValidationError only for an invalid task.
EpisodeResult run_episode(Agent& agent, const TaskSpec& task, MemoryProvider& provider,
                          Gateway& gateway, const EpisodeOptions& options = {});

using AgentFactory = std::function<std::unique_ptr<Agent>()>;

struct BatchOptions {
  RunMode mode = RunMode::kOnline;
  /// Seed of the default SimAgent.
  uint64_t seed = 0;
  /// Consecutive attempts per task, sharing memory. Above 1, per-task
  /// feedback is keyed "<task_id>#<attempt>".
  int attempts = 1;
  EpisodeOptions episode;
  /// Defaults to SimAgent(seed).
  AgentFactory agent_factory;
  /// Offline mode ingests this corpus before evaluating. When absent the
  /// corpus is a no-memory pass over the batch itself.
  std::optional<std::vector<TrajectoryData>> offline_corpus;
  /// Candidate directory; empty keeps everything in memory.
  std::filesystem::path out_dir;
  /// Merged into summary.json next to the summary fields.
  Json summary_extra = Json::object();
};

struct EpisodeRecord {
  int attempt = 1;
  TrajectoryData trajectory;
  FeedbackVector feedback;
  std::string error;
};

struct BatchResult {
  FeedbackSummary summary;
  std::vector<EpisodeRecord> episodes;
  /// Store contents after the batch.
  std::vector<MemoryItem> final_memory;
  /// Ledger of this batch's gateway (evaluation phase only in offline mode).
  std::map<std::string, CompletionUsage> usage;
  double total_cost_units = 0.0;
  int64_t final_ingest_counter = 0;
};

/// Runs a batch with a fresh provider built from `genotype` (empty memory at
/// batch start). With out_dir set, writes genotype.json, memory.jsonl,
/// vectors.*, manage.log, trajectories.jsonl and summary.json there.
BatchResult run_batch(const MemoryGenotype& genotype, const std::vector<TaskSpec>& tasks,
                      std::shared_ptr<Gateway> gateway, const BatchOptions& options);

/// Same harness over an arbitrary provider.
BatchResult run_batch_with(MemoryProvider& provider, const std::vector<TaskSpec>& tasks,
                           Gateway& gateway, const BatchOptions& options);

/// trajectories.jsonl line: the trajectory fields plus "attempt",
/// "feedback" and "error".
Json episode_record_json(const EpisodeRecord& record);
EpisodeRecord episode_record_from_json(const Json& j);
std::vector<EpisodeRecord> load_episode_records(const std::filesystem::path& path);

}  // namespace evolab
