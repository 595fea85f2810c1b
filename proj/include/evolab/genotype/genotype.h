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
#include <string_view>
#include <vector>

#include "evolab/core/jsonl.h"
#include "evolab/core/request.h"
#include "evolab/embed/store_backend.h"

namespace evolab {

inline constexpr int kGenotypeSchemaVersion = 1;

enum class EncodeStrategy {
  kVerbatim,
  kSummary,
  kInsight,
  kWorkflow,
  kTipsShortcuts,
  kToolSynthesis,
};

enum class SuccessFilter { kAll, kSuccessOnly, kContrastive };

using StoreStrategy = BackendKind;

enum class RetrieveStrategy {
  kSemanticTopK,
  kContrastivePair,
  kFunctionMatch,
  kReturnAll,
};

enum class ManageStrategy { kNone, kDedup, kPruneByScore, kConsolidate };

std::string_view to_string(EncodeStrategy v);
std::string_view to_string(SuccessFilter v);
std::string_view to_string(RetrieveStrategy v);
std::string_view to_string(ManageStrategy v);
EncodeStrategy parse_encode_strategy(std::string_view text);
SuccessFilter parse_success_filter(std::string_view text);
RetrieveStrategy parse_retrieve_strategy(std::string_view text);
ManageStrategy parse_manage_strategy(std::string_view text);

struct EncodeSpec {
  EncodeStrategy strategy = EncodeStrategy::kVerbatim;
  /// Optional second pass over the same trajectory ("Traj. & Tips").
  std::optional<EncodeStrategy> secondary;
  SuccessFilter success_filter = SuccessFilter::kAll;
  int max_items_per_trajectory = 2;
  int max_chars = 800;

  bool operator==(const EncodeSpec&) const = default;
};

struct StoreSpec {
  StoreStrategy strategy = StoreStrategy::kVectorIndex;
  /// nullopt = unlimited. Oldest items are evicted past capacity.
  std::optional<int> capacity;

  bool operator==(const StoreSpec&) const = default;
};

struct RetrieveSpec {
  RetrieveStrategy strategy = RetrieveStrategy::kSemanticTopK;
  int k = 3;
  double min_score = 0.0;
  /// Stages in which retrieval answers; nullopt = every stage.
  std::optional<std::vector<Stage>> stage_filter;

  bool operator==(const RetrieveSpec&) const = default;
};

struct ManageSpec {
  ManageStrategy strategy = ManageStrategy::kNone;
  int trigger_every = 10;
  double dedup_threshold = 0.9;
  int capacity = 64;

  bool operator==(const ManageSpec&) const = default;
};

/// Declarative memory architecture: one strategy plus parameters per stage.
struct MemoryGenotype {
  int schema_version = kGenotypeSchemaVersion;
  std::string name;
  /// Ancestor names, oldest first.
  std::vector<std::string> lineage;
  /// Free-form provenance notes (e.g. design fallbacks).
  std::vector<std::string> notes;
  EncodeSpec encode;
  StoreSpec store;
  RetrieveSpec retrieve;
  ManageSpec manage;

  bool operator==(const MemoryGenotype&) const = default;
};

/// Checks ranges and cross-field rules. Empty result means valid.
std::vector<std::string> validate(const MemoryGenotype& genotype);

/// Stage-level equality ignoring name, lineage and notes.
bool same_architecture(const MemoryGenotype& a, const MemoryGenotype& b);

void to_json(Json& j, const MemoryGenotype& genotype);
/// Throws ValidationError on unknown enum spellings, missing keys or a
/// missing/unsupported schema_version.
void from_json(const Json& j, MemoryGenotype& genotype);

/// Canonical text form: pretty JSON, sorted keys, trailing newline.
std::string serialize(const MemoryGenotype& genotype);
MemoryGenotype deserialize(std::string_view text);

MemoryGenotype load_genotype(const std::filesystem::path& path);
void save_genotype(const std::filesystem::path& path,
                   const MemoryGenotype& genotype);

/// 16 hex digits over the compact canonical form of the stage fields only.
std::string architecture_hash(const MemoryGenotype& genotype);

}  // namespace evolab
