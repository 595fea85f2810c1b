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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "evolab/core/random.h"
#include "evolab/genotype/genotype.h"

namespace evolab {

/// Every individually mutable field of a genotype.
enum class MutationSite {
  kEncodeStrategy,
  kEncodeSecondary,
  kEncodeFilter,
  kEncodeMaxItems,
  kEncodeMaxChars,
  kStoreStrategy,
  kStoreCapacity,
  kRetrieveStrategy,
  kRetrieveK,
  kRetrieveMinScore,
  kRetrieveStageFilter,
  kManageStrategy,
  kManageTriggerEvery,
  kManageDedupThreshold,
  kManageCapacity,
};

inline constexpr std::size_t kMutationSiteCount = 15;
using SiteWeights = std::array<double, kMutationSiteCount>;

std::string_view to_string(MutationSite site);
/// "encode", "store", "retrieve" or "manage".
std::string_view stage_of(MutationSite site);

struct MutationRecord {
  MutationSite site;
  /// Coupled field rewritten to restore the cross-field rules, if any.
  std::optional<MutationSite> repaired;
};

/// Changes `site` to a different value drawn from its ladder, then repairs
/// the store/retrieve coupling. Input must validate; output validates.
MemoryGenotype mutate_site(const MemoryGenotype& genotype, MutationSite site,
                           Rng& rng, MutationRecord* record = nullptr);

/// Deterministic in (genotype, seed, descendant_index). Alters one field
/// (plus at most one coupled repair), names the result
/// "<parent>.<descendant_index>" and appends the parent to the lineage.
MemoryGenotype mutate(const MemoryGenotype& genotype, uint64_t seed,
                      int descendant_index, MutationRecord* record = nullptr);

/// As mutate(), with the site drawn proportionally to `weights`.
MemoryGenotype mutate_weighted(const MemoryGenotype& genotype,
                               const SiteWeights& weights, uint64_t seed,
                               int descendant_index,
                               MutationRecord* record = nullptr);

/// Lowers retrieve.k one rung when k > 1, otherwise lowers encode.max_chars.
/// Returns nullopt when both are already at their minimum.
std::optional<MemoryGenotype> reduce_context(const MemoryGenotype& genotype,
                                             MutationRecord* record = nullptr);

}  // namespace evolab
