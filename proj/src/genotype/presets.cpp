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

#include "evolab/genotype/presets.h"

#include <algorithm>

#include "evolab/core/errors.h"

namespace evolab {
namespace {

using E = EncodeStrategy;
using F = SuccessFilter;
using S = StoreStrategy;
using R = RetrieveStrategy;
using M = ManageStrategy;

MemoryGenotype make(std::string name, E encode, std::optional<E> secondary,
                    F filter, S store, R retrieve, M manage) {
  MemoryGenotype g;
  g.name = std::move(name);
  g.encode.strategy = encode;
  g.encode.secondary = secondary;
  g.encode.success_filter = filter;
  g.store.strategy = store;
  g.retrieve.strategy = retrieve;
  g.manage.strategy = manage;
  return g;
}

MemoryGenotype build(std::string_view name) {
  if (name == "voyager") {
    return make("voyager", E::kVerbatim, E::kTipsShortcuts, F::kAll,
                S::kVectorIndex, R::kSemanticTopK, M::kNone);
  }
  if (name == "expel") {
    return make("expel", E::kInsight, E::kVerbatim, F::kContrastive,
                S::kVectorIndex, R::kContrastivePair, M::kNone);
  }
  if (name == "generative") {
    return make("generative", E::kVerbatim, E::kInsight, F::kAll,
                S::kVectorIndex, R::kSemanticTopK, M::kNone);
  }
  if (name == "dilu") {
    return make("dilu", E::kVerbatim, std::nullopt, F::kAll, S::kVectorIndex,
                R::kSemanticTopK, M::kNone);
  }
  if (name == "awm") {
    auto g = make("awm", E::kWorkflow, std::nullopt, F::kSuccessOnly,
                  S::kVectorIndex, R::kSemanticTopK, M::kNone);
    g.encode.max_items_per_trajectory = 1;
    return g;
  }
  if (name == "mobile_e") {
    return make("mobile_e", E::kTipsShortcuts, std::nullopt, F::kAll,
                S::kVectorIndex, R::kSemanticTopK, M::kNone);
  }
  if (name == "cheatsheet") {
    return make("cheatsheet", E::kTipsShortcuts, std::nullopt, F::kAll,
                S::kAppendLog, R::kSemanticTopK, M::kNone);
  }
  if (name == "skillweaver") {
    auto g = make("skillweaver", E::kToolSynthesis, std::nullopt,
                  F::kSuccessOnly, S::kKeyedLibrary, R::kFunctionMatch,
                  M::kPruneByScore);
    g.encode.max_items_per_trajectory = 1;
    g.retrieve.min_score = 0.5;
    g.manage.capacity = 32;
    return g;
  }
  if (name == "g_memory") {
    auto g = make("g_memory", E::kTipsShortcuts, E::kWorkflow, F::kAll,
                  S::kVectorIndex, R::kSemanticTopK, M::kConsolidate);
    g.manage.dedup_threshold = 0.85;
    return g;
  }
  if (name == "agent_kb") {
    return make("agent_kb", E::kTipsShortcuts, E::kWorkflow, F::kAll,
                S::kVectorIndex, R::kSemanticTopK, M::kDedup);
  }
  if (name == "memp") {
    return make("memp", E::kTipsShortcuts, E::kWorkflow, F::kAll,
                S::kAppendLog, R::kSemanticTopK, M::kPruneByScore);
  }
  if (name == "evolver") {
    auto g = make("evolver", E::kTipsShortcuts, E::kWorkflow, F::kAll,
                  S::kAppendLog, R::kContrastivePair, M::kConsolidate);
    g.manage.dedup_threshold = 0.85;
    return g;
  }
  std::string known;
  for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
  throw ValidationError("unknown preset '" + std::string(name) +
                        "' (registry: " + known + ")");
}

}  // namespace

const std::vector<PresetInfo>& preset_registry() {
  static const std::vector<PresetInfo> kRegistry{
      {"voyager", "I", "Voyager", "Traj. & Tips", "Vector DB", "Semantic Search", "N/A", ""},
      {"expel", "II", "ExpeL", "Traj. & Insights", "Vector DB", "Contrastive Comparison", "N/A", ""},
      {"generative", "III", "Generative", "Traj. & Insights", "Vector DB", "Semantic Search", "N/A", ""},
      {"dilu", "IV", "DILU", "Traj.", "Vector DB", "Semantic Search", "N/A", ""},
      {"awm", "V", "AWM", "Workflows", "Vector DB", "Semantic Search", "N/A", ""},
      {"mobile_e", "VI", "Mobile-E", "Tips & Shortcuts", "Vector DB", "Semantic Search", "N/A",
       "step-granular ingestion approximated at trajectory granularity"},
      {"cheatsheet", "VII", "Cheatsheet", "Tips & Shortcuts", "JSON", "Semantic Search", "N/A", ""},
      {"skillweaver", "VIII", "SkillWeaver", "APIs", "Tool Library", "Function Matching", "Skill Pruning", ""},
      {"g_memory", "IX", "G-Memory", "Tips & Workflow", "Graph", "Graph/Semantic Search",
       "Episodic Consolidation", "graph store approximated by vector_index + semantic search"},
      {"agent_kb", "X", "Agent-KB", "Tips & Workflow", "Hybrid DB", "Hybrid Search", "Deduplication",
       "hybrid store approximated by vector_index + semantic search; step granularity approximated"},
      {"memp", "XI", "Memp", "Tips & Workflow", "JSON", "Semantic Search", "Failure-driven Adjustment",
       "step-granular ingestion approximated at trajectory granularity"},
      {"evolver", "XII", "EvolveR", "Tips & Workflow", "JSON", "Contrastive Comparison", "Update & Pruning",
       "step-granular ingestion approximated at trajectory granularity"},
  };
  return kRegistry;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& info : preset_registry()) names.emplace_back(info.name);
  return names;
}

MemoryGenotype preset(std::string_view name) { return build(name); }

const PresetInfo& preset_info(std::string_view name) {
  const auto& reg = preset_registry();
  auto it = std::find_if(reg.begin(), reg.end(),
                         [&](const PresetInfo& p) { return p.name == name; });
  if (it == reg.end()) build(name);  // throws with the registry listing
  return *it;
}

}  // namespace evolab
