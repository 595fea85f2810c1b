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

#include "evolab/meta/diagnose.h"

#include <algorithm>
#include <cstdio>
#include <map>

#include "evolab/core/errors.h"
#include "evolab/llm/prompts.h"

namespace evolab {
namespace {

std::string fixed4(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", x);
  return buf;
}

bool referenced(const TrajectoryData& t, const std::string& id, const std::string& key) {
  if (key.empty()) return false;
  std::size_t first = t.steps.size();
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& ids = t.steps[i].memory_ids;
    if (std::find(ids.begin(), ids.end(), id) != ids.end()) {
      first = i;
      break;
    }
  }
  for (std::size_t i = first; i < t.steps.size(); ++i) {
    if (t.steps[i].action.find(key) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

void to_json(Json& j, const DefectProfile& p) {
  j = Json{{"retrieval_hit_rate", p.retrieval_hit_rate},
           {"dead_item_fraction", p.dead_item_fraction},
           {"memory_token_overhead", p.memory_token_overhead},
           {"failure_families", p.failure_families},
           {"store_growth", p.store_growth},
           {"narrative", p.narrative ? Json(*p.narrative) : Json(nullptr)}};
}

void from_json(const Json& j, DefectProfile& p) {
  p.retrieval_hit_rate = j.at("retrieval_hit_rate").get<double>();
  p.dead_item_fraction = j.at("dead_item_fraction").get<double>();
  p.memory_token_overhead = j.at("memory_token_overhead").get<double>();
  p.failure_families = j.at("failure_families").get<std::vector<std::string>>();
  p.store_growth = j.at("store_growth").get<double>();
  const auto& n = j.at("narrative");
  p.narrative = n.is_null() ? std::nullopt : std::optional<std::string>(n.get<std::string>());
}

DefectProfile diagnose(const std::vector<EpisodeRecord>& episodes,
                       const std::vector<MemoryItem>& store) {
  DefectProfile p;
  std::size_t pairs = 0;
  std::size_t hits = 0;
  int64_t memory_tokens = 0;
  int64_t total_tokens = 0;
  std::map<std::string, std::pair<int, int>> families;  // successes, episodes
  for (const auto& e : episodes) {
    const auto& t = e.trajectory;
    for (std::size_t i = 0; i < t.provided_memory_ids.size(); ++i) {
      ++pairs;
      const std::string& key =
          i < t.provided_memory_keys.size() ? t.provided_memory_keys[i] : std::string();
      hits += referenced(t, t.provided_memory_ids[i], key) ? 1 : 0;
    }
    for (const auto& s : t.steps) memory_tokens += s.memory_tokens;
    total_tokens += t.total_tokens;
    auto& [ok, n] = families[t.family_id.empty() ? t.task_id : t.family_id];
    ok += t.success ? 1 : 0;
    ++n;
  }
  p.retrieval_hit_rate = pairs == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(pairs);
  std::size_t dead = 0;
  for (const auto& item : store) dead += item.hit_count == 0 ? 1 : 0;
  p.dead_item_fraction =
      store.empty() ? 0.0 : static_cast<double>(dead) / static_cast<double>(store.size());
  p.memory_token_overhead = total_tokens == 0 ? 0.0
                                              : static_cast<double>(memory_tokens) /
                                                    static_cast<double>(total_tokens);
  for (const auto& [family, counts] : families) {
    if (2 * counts.first < counts.second) p.failure_families.push_back(family);
  }
  p.store_growth = episodes.empty() ? 0.0
                                    : static_cast<double>(store.size()) /
                                          static_cast<double>(episodes.size());
  return p;
}

DefectProfile diagnose(const MemoryGenotype& genotype, const FeedbackSummary& summary,
                       const std::vector<EpisodeRecord>& episodes,
                       const std::vector<MemoryItem>& store, Gateway* gateway) {
  DefectProfile p = diagnose(episodes, store);
  if (!gateway) return p;
  std::string families;
  for (const auto& f : p.failure_families) families += (families.empty() ? "" : ", ") + f;
  Json compact;
  to_json(compact, genotype);
  const std::string prompt = render_prompt(
      "diagnose.v1", {{"GENOTYPE", dump_line(compact)},
                      {"PERF_MEAN", fixed4(summary.perf_mean)},
                      {"COST_MEAN", fixed4(summary.cost_mean)},
                      {"DELAY_MEAN", fixed4(summary.delay_mean)},
                      {"RETRIEVAL_HIT_RATE", fixed4(p.retrieval_hit_rate)},
                      {"DEAD_ITEM_FRACTION", fixed4(p.dead_item_fraction)},
                      {"MEMORY_TOKEN_OVERHEAD", fixed4(p.memory_token_overhead)},
                      {"STORE_GROWTH", fixed4(p.store_growth)},
                      {"FAILURE_FAMILIES", families.empty() ? "none" : families}});
  if (!gateway->can_serve("diagnose", prompt)) return p;
  CompletionParams params;
  params.tag = "diagnose";
  try {
    p.narrative = gateway->complete(prompt, params).text;
  } catch (const GatewayError&) {
    p.narrative.reset();
  }
  return p;
}

DefectProfile diagnose_run_dir(const std::filesystem::path& dir, Gateway* gateway) {
  const auto trajectories = dir / "trajectories.jsonl";
  if (!std::filesystem::exists(trajectories)) {
    throw InitializationError(dir, "run directory has no trajectories.jsonl");
  }
  const auto episodes = load_episode_records(trajectories);
  const auto memory_path = dir / "memory.jsonl";
  const auto store =
      std::filesystem::exists(memory_path) ? load_items(memory_path) : std::vector<MemoryItem>{};
  if (!gateway) return diagnose(episodes, store);
  const MemoryGenotype genotype = load_genotype(dir / "genotype.json");
  const FeedbackSummary summary = read_json_file(dir / "summary.json").get<FeedbackSummary>();
  return diagnose(genotype, summary, episodes, store, gateway);
}

}  // namespace evolab
