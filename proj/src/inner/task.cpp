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

#include "evolab/inner/task.h"

#include <array>
#include <cstdio>
#include <set>

#include "evolab/core/errors.h"
#include "evolab/core/hash.h"
#include "evolab/core/random.h"

namespace evolab {
namespace {

constexpr std::array kAttributes{
    "population count", "founding year",   "harbor depth",    "river length",
    "annual rainfall",  "postal code",     "tower height",    "park area",
    "hospital beds",    "library volumes", "bridge span",     "airport code",
    "school count",     "museum count",    "rail stations",   "dialing code",
    "crop yield",       "market days",     "festival month",  "ferry routes",
    "tram lines",       "canal length",    "forest cover",    "winter lows",
    "summer highs",     "mine output",     "census wards",    "council seats",
};

constexpr std::array kDomains{
    "coastal town", "mountain village", "river port",   "desert oasis",
    "island capital", "border city",    "lake resort",  "valley hamlet",
};

constexpr std::array kSources{"census", "registry", "atlas",  "gazette", "ledger",
                              "survey", "archive",  "almanac", "bureau", "index"};
constexpr std::array kFields{"count", "year", "level", "code",  "length", "volume",
                             "name",  "size", "depth", "rate",  "span",   "total"};

constexpr std::array kOnsets{"b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z"};
constexpr std::array kVowels{"a", "e", "i", "o", "u", "ai", "ea", "or"};

std::string entity_name(Rng& rng) {
  std::string name;
  const std::size_t syllables = 2 + rng.below(2);
  for (std::size_t i = 0; i < syllables; ++i) {
    name += kOnsets[rng.below(kOnsets.size())];
    name += kVowels[rng.below(kVowels.size())];
  }
  name += kOnsets[rng.below(kOnsets.size())];
  name[0] = static_cast<char>(name[0] - 'a' + 'A');
  return name;
}

std::string two_digits(int n) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%02d", n);
  return buf;
}

}  // namespace

void check_task(const TaskSpec& task) {
  const std::string where = "task '" + task.task_id + "': ";
  if (task.task_id.empty()) throw ValidationError("task with empty task_id");
  if (task.family_id.empty()) throw ValidationError(where + "empty family_id");
  if (task.max_steps < 1) throw ValidationError(where + "max_steps must be >= 1");
  bool derivable = false;
  for (const auto& [key, value] : task.tool_table) derivable |= value == task.gold_answer;
  if (!derivable) throw ValidationError(where + "gold_answer not derivable from tool_table");
}

void to_json(Json& j, const TaskSpec& task) {
  j = Json{{"task_id", task.task_id},       {"family_id", task.family_id},
           {"query", task.query},           {"gold_answer", task.gold_answer},
           {"tool_table", task.tool_table}, {"max_steps", task.max_steps}};
}

void from_json(const Json& j, TaskSpec& task) {
  task.task_id = j.at("task_id").get<std::string>();
  task.family_id = j.at("family_id").get<std::string>();
  task.query = j.at("query").get<std::string>();
  task.gold_answer = j.at("gold_answer").get<std::string>();
  task.tool_table = j.at("tool_table").get<std::map<std::string, std::string>>();
  task.max_steps = j.at("max_steps").get<int>();
}

std::vector<TaskSpec> load_tasks(const std::filesystem::path& path) {
  std::vector<TaskSpec> tasks;
  std::set<std::string> ids;
  std::size_t line = 0;
  for (const auto& record : read_jsonl(path)) {
    ++line;
    try {
      TaskSpec task = record.get<TaskSpec>();
      check_task(task);
      if (!ids.insert(task.task_id).second) {
        throw ValidationError("duplicate task_id '" + task.task_id + "'");
      }
      tasks.push_back(std::move(task));
    } catch (const std::exception& e) {
      throw InitializationError(path, "record " + std::to_string(line) + ": " + e.what());
    }
  }
  return tasks;
}

void save_tasks(const std::filesystem::path& path, const std::vector<TaskSpec>& tasks) {
  std::vector<Json> records(tasks.begin(), tasks.end());
  write_jsonl(path, records);
}

std::vector<TaskSpec> TaskBatch::ordered() const {
  std::vector<TaskSpec> out = new_tasks;
  out.insert(out.end(), reused_tasks.begin(), reused_tasks.end());
  return out;
}

TaskBatch compose_batch(const std::vector<TaskSpec>& pool, const TaskBatch* previous,
                        int n_new, int n_reused, uint64_t seed, int iteration) {
  if (n_new < 0 || n_reused < 0) throw ValidationError("batch sizes must be >= 0");
  TaskBatch batch;
  batch.iteration = iteration;
  Rng rng(stable_hash("batch#" + std::to_string(iteration), seed));

  const bool first = previous == nullptr || previous->size() == 0;
  const std::size_t fresh = static_cast<std::size_t>(first ? n_new + n_reused : n_new);
  std::set<std::string> excluded;
  std::vector<TaskSpec> prior;
  if (!first) {
    prior = previous->ordered();
    for (const auto& t : prior) excluded.insert(t.task_id);
  }
  std::vector<const TaskSpec*> eligible;
  for (const auto& t : pool) {
    if (!excluded.contains(t.task_id)) eligible.push_back(&t);
  }
  if (eligible.size() < fresh) {
    throw ValidationError("task pool too small: need " + std::to_string(fresh) +
                          " tasks outside the previous batch (pool size " +
                          std::to_string(pool.size()) + " required >= " +
                          std::to_string(fresh + excluded.size()) + "), have " +
                          std::to_string(eligible.size()));
  }
  for (std::size_t i : rng.sample_indices(eligible.size(), fresh)) {
    batch.new_tasks.push_back(*eligible[i]);
  }
  if (!first && n_reused > 0) {
    if (prior.size() < static_cast<std::size_t>(n_reused)) {
      throw ValidationError("previous batch too small: need " + std::to_string(n_reused) +
                            " reusable tasks, have " + std::to_string(prior.size()));
    }
    for (std::size_t i : rng.sample_indices(prior.size(), static_cast<std::size_t>(n_reused))) {
      batch.reused_tasks.push_back(prior[i]);
    }
  }
  return batch;
}

std::vector<TaskSpec> generate_tasks(const TaskGenConfig& config) {
  const std::size_t pairs = kAttributes.size() * kDomains.size();
  if (config.families < 1 || static_cast<std::size_t>(config.families) > pairs) {
    throw ValidationError("families must be in [1, " + std::to_string(pairs) + "]");
  }
  const std::size_t key_pool = kSources.size() * kFields.size();
  if (config.keys_per_family < 1 ||
      static_cast<std::size_t>(config.keys_per_family) > key_pool) {
    throw ValidationError("keys_per_family must be in [1, " + std::to_string(key_pool) + "]");
  }
  if (config.tasks_per_family < 1) throw ValidationError("tasks_per_family must be >= 1");
  if (config.max_steps < 1) throw ValidationError("max_steps must be >= 1");

  Rng rng(config.seed);
  // Distinct (attribute, domain) pairs, attributes spread first.
  std::vector<std::size_t> attrs(kAttributes.size());
  for (std::size_t i = 0; i < attrs.size(); ++i) attrs[i] = i;
  rng.shuffle(attrs);
  std::vector<std::string> keys;
  for (const char* s : kSources) {
    for (const char* f : kFields) keys.push_back(std::string(s) + "." + f);
  }

  std::vector<TaskSpec> tasks;
  for (int fam = 0; fam < config.families; ++fam) {
    const std::size_t a = attrs[static_cast<std::size_t>(fam) % attrs.size()];
    const std::size_t d = (static_cast<std::size_t>(fam) / attrs.size() + rng.below(kDomains.size())) %
                          kDomains.size();
    const std::string family_id = "f" + two_digits(fam);
    std::vector<std::string> family_keys;
    for (std::size_t i : rng.sample_indices(keys.size(), static_cast<std::size_t>(config.keys_per_family))) {
      family_keys.push_back(keys[i]);
    }
    const std::string& solution = family_keys[rng.below(family_keys.size())];
    std::set<std::string> entities;
    for (int t = 0; t < config.tasks_per_family; ++t) {
      std::string entity = entity_name(rng);
      while (!entities.insert(entity).second) entity = entity_name(rng);
      TaskSpec task;
      task.task_id = family_id + "-t" + two_digits(t);
      task.family_id = family_id;
      task.query = std::string("What is the ") + kAttributes[a] + " of the " + kDomains[d] +
                   " " + entity + "?";
      task.gold_answer = std::to_string(100 + rng.below(900000));
      for (const auto& k : family_keys) task.tool_table[k] = "NOT_FOUND";
      task.tool_table[solution] = task.gold_answer;
      task.max_steps = config.max_steps;
      tasks.push_back(std::move(task));
    }
  }
  return tasks;
}

}  // namespace evolab
