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

#include "evolab/inner/episode.h"

#include <algorithm>
#include <chrono>

#include "evolab/core/enum_names.h"
#include "evolab/core/errors.h"
#include "evolab/eval/scoring.h"
#include "evolab/genotype/modular_provider.h"
#include "evolab/genotype/strategies.h"

namespace evolab {
namespace {

constexpr EnumNames<RunMode, 2> kModeNames{{
    {RunMode::kOnline, "online"},
    {RunMode::kOffline, "offline"},
}};

void ingest_with_cadence(MemoryProvider& provider, const TrajectoryData& t,
                         EpisodeResult* result) {
  IngestResult ingest;
  try {
    ingest = provider.take_in_memory(t);
  } catch (const std::exception& e) {
    ingest = {false, e.what()};
  }
  const int cadence = provider.manage_cadence();
  if (ingest.ok && cadence > 0 && provider.ingest_counter() % cadence == 0) {
    const ManageReport report = provider.manage();
    if (result) result->manage = report;
  }
  if (result) result->ingest = ingest;
}

std::unique_ptr<Agent> make_agent(const BatchOptions& options) {
  if (options.agent_factory) return options.agent_factory();
  return std::make_unique<SimAgent>(options.seed);
}

}  // namespace

std::string_view to_string(RunMode mode) { return enum_name(kModeNames, mode); }

RunMode parse_run_mode(std::string_view text) { return enum_parse(kModeNames, text, "mode"); }

EpisodeResult run_episode(Agent& agent, const TaskSpec& task, MemoryProvider& provider,
                          Gateway& gateway, const EpisodeOptions& options) {
  check_task(task);
  EpisodeResult result;
  TrajectoryData& t = result.trajectory;
  t.task_id = task.task_id;
  t.family_id = task.family_id;
  t.query = task.query;
  t.gold_answer = task.gold_answer;
  t.memory_version = provider.ingest_counter();

  const double cost_before = gateway.total_cost_units();
  const auto started = std::chrono::steady_clock::now();
  try {
    std::string context;
    for (int step = 0; step < task.max_steps; ++step) {
      MemoryRequest request;
      request.query = task.query;
      request.context = context;
      request.stage = step == 0 ? Stage::kPlanning : Stage::kExecution;
      request.max_items = options.memory_budget;
      request.status["step"] = std::to_string(step);
      const MemoryResponse memory = provider.provide_memory(request);
      const std::string memory_text = render_memory(memory);

      TrajectoryStep s;
      s.index = step;
      for (const auto& item : memory.items) {
        s.memory_ids.push_back(item.id);
        if (std::find(t.provided_memory_ids.begin(), t.provided_memory_ids.end(), item.id) ==
            t.provided_memory_ids.end()) {
          t.provided_memory_ids.push_back(item.id);
          t.provided_memory_keys.push_back(item_hint(item, task.tool_table));
        }
      }
      const AgentTurn turn = agent.act({task, t.steps, memory, memory_text}, gateway);
      s.state_summary = std::to_string(step) + " keys tried, " +
                        std::to_string(memory.items.size()) + " memory items";
      s.action = turn.action;
      s.tokens_in = turn.tokens_in;
      s.tokens_out = turn.tokens_out;
      s.memory_tokens = std::min(approx_tokens(memory_text), turn.tokens_in);
      if (turn.action == "give_up") {
        s.observation = "no keys left";
        t.steps.push_back(std::move(s));
        break;
      }
      const auto it = task.tool_table.find(action_argument(turn.action));
      s.observation = it == task.tool_table.end() ? std::string(kNoSuchKey) : it->second;
      const bool answered = s.observation != kNotFound && s.observation != kNoSuchKey;
      context += (context.empty() ? "" : "\n") + s.action + " -> " + s.observation;
      if (answered) t.prediction = s.observation;
      t.steps.push_back(std::move(s));
      if (answered) break;
    }
  } catch (const std::exception& e) {
    result.error = e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  t.reward = !t.prediction.empty() && score_exact(t.prediction, task.gold_answer) ? 1.0 : 0.0;
  finalize(t, options.success_threshold);
  t.wall_delay = agent.wall_clock_delay() ? seconds : static_cast<double>(t.steps.size());

  if (options.ingest) {
    provider.record_outcome(t.provided_memory_ids, t.success);
    ingest_with_cadence(provider, t, &result);
  }
  result.feedback.perf = t.reward;
  result.feedback.cost = std::max(0.0, gateway.total_cost_units() - cost_before);
  result.feedback.delay = t.wall_delay;
  return result;
}

BatchResult run_batch_with(MemoryProvider& provider, const std::vector<TaskSpec>& tasks,
                           Gateway& gateway, const BatchOptions& options) {
  if (tasks.empty()) throw ValidationError("run_batch: empty task list");
  if (options.attempts < 1) throw ValidationError("attempts must be >= 1");
  auto agent = make_agent(options);
  EpisodeOptions episode = options.episode;

  if (options.mode == RunMode::kOffline) {
    std::vector<TrajectoryData> corpus;
    if (options.offline_corpus) {
      corpus = *options.offline_corpus;
    } else {
      NullProvider none;
      EpisodeOptions plain = episode;
      plain.ingest = false;
      for (const auto& task : tasks) {
        corpus.push_back(run_episode(*agent, task, none, gateway, plain).trajectory);
      }
    }
    for (const auto& t : corpus) ingest_with_cadence(provider, t, nullptr);
    episode.ingest = false;
  }
  // The ledger scope is the evaluated batch.
  gateway.reset_ledger();

  BatchResult out;
  std::vector<std::pair<std::string, FeedbackVector>> keyed;
  for (const auto& task : tasks) {
    for (int attempt = 1; attempt <= options.attempts; ++attempt) {
      EpisodeResult r = run_episode(*agent, task, provider, gateway, episode);
      keyed.emplace_back(options.attempts == 1
                             ? task.task_id
                             : task.task_id + "#" + std::to_string(attempt),
                         r.feedback);
      out.episodes.push_back({attempt, std::move(r.trajectory), r.feedback, std::move(r.error)});
    }
  }
  out.summary = aggregate(keyed);
  out.final_memory = provider.snapshot();
  out.usage = gateway.usage_ledger();
  out.total_cost_units = gateway.total_cost_units();
  out.final_ingest_counter = provider.ingest_counter();

  if (!options.out_dir.empty()) {
    std::filesystem::create_directories(options.out_dir);
    std::vector<Json> lines;
    for (const auto& e : out.episodes) lines.push_back(episode_record_json(e));
    write_jsonl(options.out_dir / "trajectories.jsonl", lines);
    Json summary;
    to_json(summary, out.summary);
    summary["mode"] = to_string(options.mode);
    summary["attempts"] = options.attempts;
    summary["usage"] = out.usage;
    summary["total_cost_units"] = out.total_cost_units;
    summary["memory_items"] = out.final_memory.size();
    for (const auto& [key, value] : options.summary_extra.items()) summary[key] = value;
    write_json_file(options.out_dir / "summary.json", summary);
    provider.persist();
  }
  return out;
}

BatchResult run_batch(const MemoryGenotype& genotype, const std::vector<TaskSpec>& tasks,
                      std::shared_ptr<Gateway> gateway, const BatchOptions& options) {
  if (!gateway) throw ValidationError("run_batch: gateway required");
  auto provider = instantiate(genotype, gateway);
  if (!options.out_dir.empty()) {
    std::filesystem::create_directories(options.out_dir);
    for (const char* stale : {"memory.jsonl", "vectors.bin", "vectors.ids", "manage.log",
                              "trajectories.jsonl", "summary.json", "profile.json"}) {
      std::filesystem::remove(options.out_dir / stale);
    }
    save_genotype(options.out_dir / "genotype.json", genotype);
  }
  provider->initialize(options.out_dir);
  return run_batch_with(*provider, tasks, *gateway, options);
}

Json episode_record_json(const EpisodeRecord& record) {
  Json j;
  to_json(j, record.trajectory);
  j["attempt"] = record.attempt;
  j["feedback"] = record.feedback;
  j["error"] = record.error;
  return j;
}

EpisodeRecord episode_record_from_json(const Json& j) {
  EpisodeRecord r;
  from_json(j, r.trajectory);
  r.attempt = j.value("attempt", 1);
  r.feedback = j.at("feedback").get<FeedbackVector>();
  r.error = j.value("error", std::string());
  return r;
}

std::vector<EpisodeRecord> load_episode_records(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw InitializationError(path, "missing trajectories file");
  }
  std::vector<EpisodeRecord> out;
  std::size_t line = 0;
  for (const auto& j : read_jsonl(path)) {
    ++line;
    try {
      out.push_back(episode_record_from_json(j));
    } catch (const std::exception& e) {
      throw InitializationError(path, "record " + std::to_string(line) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace evolab
