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
#include <optional>
#include <string>
#include <vector>

#include "evolab/core/jsonl.h"
#include "evolab/core/memory_item.h"
#include "evolab/genotype/genotype.h"
#include "evolab/inner/episode.h"
#include "evolab/inner/feedback.h"
#include "evolab/llm/gateway.h"

namespace evolab {

struct DefectProfile {
  /// Provided (episode, item) pairs whose hinted key shows up in an action
  /// at or after the step the item was first provided.
  double retrieval_hit_rate = 0.0;
  /// Stored items never retrieved.
  double dead_item_fraction = 0.0;
  /// Memory context tokens over all tokens.
  double memory_token_overhead = 0.0;
  /// Families with success rate below 0.5, sorted.
  std::vector<std::string> failure_families;
  /// Items in the final store per episode.
  double store_growth = 0.0;
  std::optional<std::string> narrative;
};

void to_json(Json& j, const DefectProfile& profile);
void from_json(const Json& j, DefectProfile& profile);

/// Structural metrics from records alone.
DefectProfile diagnose(const std::vector<EpisodeRecord>& episodes,
                       const std::vector<MemoryItem>& store);

/// As above, then asks the gateway for a narrative (tag "diagnose") when it
/// can serve one. Gateway failures leave the narrative empty.
DefectProfile diagnose(const MemoryGenotype& genotype, const FeedbackSummary& summary,
                       const std::vector<EpisodeRecord>& episodes,
                       const std::vector<MemoryItem>& store, Gateway* gateway);

/// Reads genotype.json, summary.json, trajectories.jsonl and memory.jsonl
/// from a candidate directory. Throws InitializationError naming the
/// directory when trajectories are missing.
DefectProfile diagnose_run_dir(const std::filesystem::path& candidate_dir, Gateway* gateway);

}  // namespace evolab
