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

#include "evolab/genotype/mutate.h"

#include <algorithm>
#include <stdexcept>

#include "evolab/core/enum_names.h"
#include "evolab/core/hash.h"

namespace evolab {
namespace {

constexpr EnumNames<MutationSite, kMutationSiteCount> kSiteNames{{
    {MutationSite::kEncodeStrategy, "encode.strategy"},
    {MutationSite::kEncodeSecondary, "encode.secondary"},
    {MutationSite::kEncodeFilter, "encode.success_filter"},
    {MutationSite::kEncodeMaxItems, "encode.max_items_per_trajectory"},
    {MutationSite::kEncodeMaxChars, "encode.max_chars"},
    {MutationSite::kStoreStrategy, "store.strategy"},
    {MutationSite::kStoreCapacity, "store.capacity"},
    {MutationSite::kRetrieveStrategy, "retrieve.strategy"},
    {MutationSite::kRetrieveK, "retrieve.k"},
    {MutationSite::kRetrieveMinScore, "retrieve.min_score"},
    {MutationSite::kRetrieveStageFilter, "retrieve.stage_filter"},
    {MutationSite::kManageStrategy, "manage.strategy"},
    {MutationSite::kManageTriggerEvery, "manage.trigger_every"},
    {MutationSite::kManageDedupThreshold, "manage.dedup_threshold"},
    {MutationSite::kManageCapacity, "manage.capacity"},
}};

// Value ladders. A mutation moves a field to a different rung.
constexpr std::array kMaxItems{1, 2, 3, 4};
constexpr std::array kMaxChars{200, 400, 800, 1600, 3200};
constexpr std::array kStoreCapacity{0, 16, 32, 64, 128};  // 0 = unlimited
constexpr std::array kTopK{1, 2, 3, 4, 5, 8};
constexpr std::array kMinScore{-1.0, 0.0, 0.1, 0.2, 0.3, 0.5};
constexpr std::array kTriggerEvery{1, 2, 5, 10, 20};
constexpr std::array kDedupThreshold{0.8, 0.85, 0.9, 0.95};
constexpr std::array kManageCapacity{16, 32, 64, 128};

constexpr std::array kEncodes{EncodeStrategy::kVerbatim, EncodeStrategy::kSummary,
                              EncodeStrategy::kInsight, EncodeStrategy::kWorkflow,
                              EncodeStrategy::kTipsShortcuts,
                              EncodeStrategy::kToolSynthesis};
constexpr std::array kFilters{SuccessFilter::kAll, SuccessFilter::kSuccessOnly,
                              SuccessFilter::kContrastive};
constexpr std::array kStores{StoreStrategy::kVectorIndex, StoreStrategy::kAppendLog,
                             StoreStrategy::kKeyedLibrary};
constexpr std::array kRetrieves{RetrieveStrategy::kSemanticTopK,
                                RetrieveStrategy::kContrastivePair,
                                RetrieveStrategy::kFunctionMatch,
                                RetrieveStrategy::kReturnAll};
constexpr std::array kManages{ManageStrategy::kNone, ManageStrategy::kDedup,
                              ManageStrategy::kPruneByScore,
                              ManageStrategy::kConsolidate};

template <typename T, std::size_t N>
T pick_other(const std::array<T, N>& ladder, const T& current, Rng& rng) {
  std::vector<T> options;
  for (const T& v : ladder) {
    if (!(v == current)) options.push_back(v);
  }
  return options[rng.below(options.size())];
}

using StageSet = std::optional<std::vector<Stage>>;

std::vector<StageSet> stage_filter_ladder() {
  return {std::nullopt,
          std::vector<Stage>{Stage::kPlanning},
          std::vector<Stage>{Stage::kPlanning, Stage::kExecution},
          std::vector<Stage>{Stage::kExecution}};
}

// Restores the two store/retrieve rules after `changed` was rewritten.
std::optional<MutationSite> repair(MemoryGenotype& g, MutationSite changed) {
  const bool needs_keys = g.retrieve.strategy == RetrieveStrategy::kFunctionMatch;
  const bool needs_vectors = g.retrieve.strategy == RetrieveStrategy::kSemanticTopK ||
                             g.retrieve.strategy == RetrieveStrategy::kContrastivePair;
  const bool keyed = g.store.strategy == StoreStrategy::kKeyedLibrary;
  if (needs_keys && !keyed) {
    if (changed == MutationSite::kRetrieveStrategy) {
      g.store.strategy = StoreStrategy::kKeyedLibrary;
      return MutationSite::kStoreStrategy;
    }
    g.retrieve.strategy = RetrieveStrategy::kSemanticTopK;
    return MutationSite::kRetrieveStrategy;
  }
  if (needs_vectors && keyed) {
    if (changed == MutationSite::kRetrieveStrategy) {
      g.store.strategy = StoreStrategy::kVectorIndex;
      return MutationSite::kStoreStrategy;
    }
    g.retrieve.strategy = RetrieveStrategy::kFunctionMatch;
    return MutationSite::kRetrieveStrategy;
  }
  return std::nullopt;
}

void finish(MemoryGenotype& child, const MemoryGenotype& parent,
            int descendant_index) {
  child.lineage = parent.lineage;
  child.lineage.push_back(parent.name);
  child.name = parent.name + "." + std::to_string(descendant_index);
}

uint64_t mutation_seed(const MemoryGenotype& g, uint64_t seed, int index) {
  return stable_hash(architecture_hash(g) + "#" + std::to_string(index), seed);
}

}  // namespace

std::string_view to_string(MutationSite site) { return enum_name(kSiteNames, site); }

std::string_view stage_of(MutationSite site) {
  switch (site) {
    case MutationSite::kEncodeStrategy:
    case MutationSite::kEncodeSecondary:
    case MutationSite::kEncodeFilter:
    case MutationSite::kEncodeMaxItems:
    case MutationSite::kEncodeMaxChars:
      return "encode";
    case MutationSite::kStoreStrategy:
    case MutationSite::kStoreCapacity:
      return "store";
    case MutationSite::kRetrieveStrategy:
    case MutationSite::kRetrieveK:
    case MutationSite::kRetrieveMinScore:
    case MutationSite::kRetrieveStageFilter:
      return "retrieve";
    default:
      return "manage";
  }
}

MemoryGenotype mutate_site(const MemoryGenotype& genotype, MutationSite site,
                           Rng& rng, MutationRecord* record) {
  MemoryGenotype g = genotype;
  switch (site) {
    case MutationSite::kEncodeStrategy: {
      std::vector<EncodeStrategy> options;
      for (auto e : kEncodes) {
        if (e != g.encode.strategy && (!g.encode.secondary || e != *g.encode.secondary)) {
          options.push_back(e);
        }
      }
      g.encode.strategy = options[rng.below(options.size())];
      break;
    }
    case MutationSite::kEncodeSecondary: {
      std::vector<std::optional<EncodeStrategy>> options{std::nullopt};
      for (auto e : kEncodes) {
        if (e != g.encode.strategy) options.emplace_back(e);
      }
      std::erase(options, g.encode.secondary);
      g.encode.secondary = options[rng.below(options.size())];
      break;
    }
    case MutationSite::kEncodeFilter:
      g.encode.success_filter = pick_other(kFilters, g.encode.success_filter, rng);
      break;
    case MutationSite::kEncodeMaxItems:
      g.encode.max_items_per_trajectory =
          pick_other(kMaxItems, g.encode.max_items_per_trajectory, rng);
      break;
    case MutationSite::kEncodeMaxChars:
      g.encode.max_chars = pick_other(kMaxChars, g.encode.max_chars, rng);
      break;
    case MutationSite::kStoreStrategy:
      g.store.strategy = pick_other(kStores, g.store.strategy, rng);
      break;
    case MutationSite::kStoreCapacity: {
      const int next = pick_other(kStoreCapacity, g.store.capacity.value_or(0), rng);
      g.store.capacity = next == 0 ? std::nullopt : std::optional<int>(next);
      break;
    }
    case MutationSite::kRetrieveStrategy:
      g.retrieve.strategy = pick_other(kRetrieves, g.retrieve.strategy, rng);
      break;
    case MutationSite::kRetrieveK:
      g.retrieve.k = pick_other(kTopK, g.retrieve.k, rng);
      break;
    case MutationSite::kRetrieveMinScore:
      g.retrieve.min_score = pick_other(kMinScore, g.retrieve.min_score, rng);
      break;
    case MutationSite::kRetrieveStageFilter: {
      auto options = stage_filter_ladder();
      std::erase(options, g.retrieve.stage_filter);
      g.retrieve.stage_filter = options[rng.below(options.size())];
      break;
    }
    case MutationSite::kManageStrategy:
      g.manage.strategy = pick_other(kManages, g.manage.strategy, rng);
      break;
    case MutationSite::kManageTriggerEvery:
      g.manage.trigger_every = pick_other(kTriggerEvery, g.manage.trigger_every, rng);
      break;
    case MutationSite::kManageDedupThreshold:
      g.manage.dedup_threshold =
          pick_other(kDedupThreshold, g.manage.dedup_threshold, rng);
      break;
    case MutationSite::kManageCapacity:
      g.manage.capacity = pick_other(kManageCapacity, g.manage.capacity, rng);
      break;
  }
  const auto repaired = repair(g, site);
  if (record) *record = {site, repaired};
  return g;
}

MemoryGenotype mutate_weighted(const MemoryGenotype& genotype,
                               const SiteWeights& weights, uint64_t seed,
                               int descendant_index, MutationRecord* record) {
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("mutation weights must be >= 0");
    total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("mutation weights sum to zero");
  Rng rng(mutation_seed(genotype, seed, descendant_index));
  double draw = rng.unit() * total;
  std::size_t chosen = kMutationSiteCount - 1;
  for (std::size_t i = 0; i < kMutationSiteCount; ++i) {
    if (weights[i] <= 0.0) continue;
    if (draw < weights[i]) {
      chosen = i;
      break;
    }
    draw -= weights[i];
    chosen = i;  // fallback to the last positive weight on rounding
  }
  MemoryGenotype child =
      mutate_site(genotype, static_cast<MutationSite>(chosen), rng, record);
  finish(child, genotype, descendant_index);
  return child;
}

MemoryGenotype mutate(const MemoryGenotype& genotype, uint64_t seed,
                      int descendant_index, MutationRecord* record) {
  SiteWeights uniform;
  uniform.fill(1.0);
  return mutate_weighted(genotype, uniform, seed, descendant_index, record);
}

std::optional<MemoryGenotype> reduce_context(const MemoryGenotype& genotype,
                                             MutationRecord* record) {
  MemoryGenotype g = genotype;
  auto lower = [](const auto& ladder, auto current) {
    using T = decltype(current);
    std::optional<T> best;
    for (T v : ladder) {
      if (v < current && (!best || v > *best)) best = v;
    }
    return best;
  };
  if (g.retrieve.k > 1) {
    g.retrieve.k = lower(kTopK, g.retrieve.k).value_or(1);
    if (record) *record = {MutationSite::kRetrieveK, std::nullopt};
    return g;
  }
  if (auto chars = lower(kMaxChars, g.encode.max_chars)) {
    g.encode.max_chars = *chars;
    if (record) *record = {MutationSite::kEncodeMaxChars, std::nullopt};
    return g;
  }
  return std::nullopt;
}

}  // namespace evolab
