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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "evolab/core/jsonl.h"
#include "evolab/genotype/genotype.h"
#include "evolab/inner/episode.h"
#include "evolab/inner/task.h"
#include "evolab/llm/gateway.h"
#include "evolab/meta/design.h"
#include "evolab/meta/pareto.h"

namespace evolab {

/// evolve.json.
struct EvolutionConfig {
  int K_max = 3;
  int K = 1;
  int S = 3;
  int n_new = 40;
  int n_reused = 20;
  uint64_t seed = 0;
  Proposer proposer = Proposer::kDeterministic;
  /// Also carry the selected parents into the next candidate set.
  bool elitism = false;
  /// Preset name or path to a .genotype.json file.
  std::string initial = "dilu";
  RunMode mode = RunMode::kOnline;
  /// Concurrent candidate evaluations; 0 = hardware concurrency.
  int max_parallel = 0;
  PriceTable prices;

  bool operator==(const EvolutionConfig& other) const;
};

/// Throws ValidationError on out-of-range values.
void check_config(const EvolutionConfig& config);
void to_json(Json& j, const EvolutionConfig& config);
/// Unknown keys are rejected; missing keys keep their defaults.
void from_json(const Json& j, EvolutionConfig& config);
EvolutionConfig load_evolution_config(const std::filesystem::path& path);

/// The initial genotype: a preset name, else a genotype file resolved
/// against `base_dir` when relative.
MemoryGenotype resolve_initial(const std::string& initial, const std::filesystem::path& base_dir);

struct IterationRecord {
  int iteration = 0;
  std::vector<CandidateRecord> candidates;
  /// Genotype hashes of P^(k), in selection order.
  std::vector<std::string> selected;
  std::vector<std::string> batch_task_ids;
};

struct EvolutionState {
  /// Next iteration to run; == K_max when finished.
  int k = 0;
  EvolutionConfig config;
  /// J^(k), awaiting evaluation.
  std::vector<MemoryGenotype> candidates;
  /// Parent hash per pending candidate ("" for the initial one).
  std::vector<std::string> candidate_parents;
  std::vector<IterationRecord> history;
  std::optional<TaskBatch> previous_batch;

  bool finished() const { return k >= config.K_max; }
  std::size_t candidates_evaluated() const;
  std::size_t episodes_run() const;
};

EvolutionState initial_state(const EvolutionConfig& config, const MemoryGenotype& initial);

/// Everything an iteration needs besides the state.
struct EvolutionContext {
  const std::vector<TaskSpec>* pool = nullptr;
  std::shared_ptr<CompletionBackend> backend;
  /// Run root; candidates go to iter-<k>/cand-<j>. Empty keeps results in
  /// memory only.
  std::filesystem::path out_dir;
  /// Meters diagnosis and design calls.
  Gateway* meta_gateway = nullptr;
};

/// Inner loop for every candidate in J^(k) (concurrently, one provider and
/// one gateway ledger each), then ranking and parent selection and, unless
/// k is the last iteration, diagnosis and design of J^(k+1). Errors carry
/// the iteration and candidate.
EvolutionState evolve_iteration(const EvolutionState& state, const EvolutionContext& context);

/// The saved state in out_dir/state.json when present, else a fresh one.
/// Throws ValidationError when the saved run used a different config.
EvolutionState resume_or_start(const EvolutionConfig& config, const MemoryGenotype& initial,
                               const std::vector<TaskSpec>& pool,
                               const std::filesystem::path& out_dir);

struct EvolutionResult {
  EvolutionState state;
  CandidateRecord champion;
};

/// Runs (or resumes from out_dir/state.json) until K_max iterations are
/// done. Writes evolution.jsonl, state.json and champion.genotype.json.
EvolutionResult run_evolution(const EvolutionConfig& config, const MemoryGenotype& initial,
                              const std::vector<TaskSpec>& pool,
                              std::shared_ptr<CompletionBackend> backend,
                              const std::filesystem::path& out_dir);

void to_json(Json& j, const CandidateRecord& record);
void from_json(const Json& j, CandidateRecord& record);
void to_json(Json& j, const EvolutionState& state);
/// Needs the pool to rebuild the previous batch from task ids.
EvolutionState state_from_json(const Json& j, const std::vector<TaskSpec>& pool);

/// evolution.jsonl records, one per (iteration, candidate).
std::vector<Json> lineage_records(const EvolutionState& state);

}  // namespace evolab
