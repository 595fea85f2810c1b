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

#include <algorithm>
#include <set>
#include <sstream>

#include "evolab/genotype/strategies.h"

namespace evolab {
namespace {

constexpr std::size_t kMergedMaxBytes = 1600;

/// Lowest utility first; older items go before newer on ties.
bool evict_before(const MemoryItem& a, const MemoryItem& b) {
  const double ua = item_utility(a);
  const double ub = item_utility(b);
  if (ua != ub) return ua < ub;
  if (a.created_at_step != b.created_at_step) return a.created_at_step < b.created_at_step;
  return a.id < b.id;
}

int64_t prune_to(StoreBackend& store, int capacity) {
  if (static_cast<int64_t>(store.size()) <= capacity) return 0;
  auto items = store.items();
  std::sort(items.begin(), items.end(), evict_before);
  const std::size_t excess = items.size() - static_cast<std::size_t>(capacity);
  for (std::size_t i = 0; i < excess; ++i) store.erase(items[i].id);
  return static_cast<int64_t>(excess);
}

/// Greedy single-link grouping in creation order: each unassigned item
/// seeds a cluster of the later items within `threshold` of it.
std::vector<std::vector<MemoryItem>> cluster(const std::vector<MemoryItem>& items,
                                             const HashingEmbedder& embedder,
                                             double threshold) {
  std::vector<EmbeddingVector> vecs;
  vecs.reserve(items.size());
  for (const auto& item : items) vecs.push_back(embedder.embed(item.content));
  std::vector<bool> taken(items.size(), false);
  std::vector<std::vector<MemoryItem>> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (taken[i]) continue;
    taken[i] = true;
    std::vector<MemoryItem> group{items[i]};
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      if (!taken[j] && cosine(vecs[i], vecs[j]) >= threshold) {
        taken[j] = true;
        group.push_back(items[j]);
      }
    }
    out.push_back(std::move(group));
  }
  return out;
}

class NoManager final : public Manager {
 public:
  ManageReport manage(StoreBackend&, const HashingEmbedder&, int64_t counter) const override {
    return {0, 0, 0, counter};
  }
};

class DedupManager final : public Manager {
 public:
  explicit DedupManager(const ManageSpec& spec) : spec_(spec) {}

  ManageReport manage(StoreBackend& store, const HashingEmbedder& embedder,
                      int64_t counter) const override {
    ManageReport report{0, 0, 0, counter};
    for (const auto& group : cluster(store.items(), embedder, spec_.dedup_threshold)) {
      for (std::size_t i = 1; i < group.size(); ++i) {
        store.erase(group[i].id);
        ++report.deduplicated;
      }
    }
    return report;
  }

 private:
  ManageSpec spec_;
};

class PruneManager final : public Manager {
 public:
  explicit PruneManager(const ManageSpec& spec) : spec_(spec) {}

  ManageReport manage(StoreBackend& store, const HashingEmbedder&,
                      int64_t counter) const override {
    return {0, prune_to(store, spec_.capacity), 0, counter};
  }

 private:
  ManageSpec spec_;
};

class ConsolidateManager final : public Manager {
 public:
  explicit ConsolidateManager(const ManageSpec& spec) : spec_(spec) {}

  ManageReport manage(StoreBackend& store, const HashingEmbedder& embedder,
                      int64_t counter) const override {
    ManageReport report{0, 0, 0, counter};
    int minted = 0;
    for (const auto& group : cluster(store.items(), embedder, spec_.dedup_threshold)) {
      if (group.size() < 2) continue;
      MemoryItem merged = merge(group);
      do {
        merged.id = "merge-" + std::to_string(counter) + "-" + std::to_string(minted++);
      } while (store.contains(merged.id));
      merged.created_at_step = counter;
      for (const auto& member : group) store.erase(member.id);
      store.upsert(std::move(merged));
      report.merged += static_cast<int64_t>(group.size()) - 1;
    }
    report.pruned = prune_to(store, spec_.capacity);
    return report;
  }

 private:
  static MemoryItem merge(const std::vector<MemoryItem>& group) {
    MemoryItem out;
    const MemoryItem& head = group.front();
    out.kind = head.kind;
    out.source_task_id = head.source_task_id;
    out.source_success = head.source_success;
    out.key = head.key;
    out.confidence = 0.0;
    std::set<std::string> seen;
    std::string content;
    for (const auto& member : group) {
      out.confidence = std::max(out.confidence, member.confidence);
      out.hit_count += member.hit_count;
      out.success_assoc += member.success_assoc;
      out.parent_ids.push_back(member.id);
      std::istringstream lines(member.content);
      std::string line;
      while (std::getline(lines, line)) {
        if (line.empty() || !seen.insert(line).second) continue;
        content += line + "\n";
      }
    }
    if (!content.empty() && content.back() == '\n') content.pop_back();
    out.content = truncate_utf8(content, kMergedMaxBytes);
    return out;
  }

  ManageSpec spec_;
};

}  // namespace

double item_utility(const MemoryItem& item) {
  return (static_cast<double>(item.success_assoc) + item.confidence) /
         (static_cast<double>(item.hit_count) + 1.0);
}

std::unique_ptr<Manager> make_manager(const ManageSpec& spec) {
  switch (spec.strategy) {
    case ManageStrategy::kNone:
      return std::make_unique<NoManager>();
    case ManageStrategy::kDedup:
      return std::make_unique<DedupManager>(spec);
    case ManageStrategy::kPruneByScore:
      return std::make_unique<PruneManager>(spec);
    case ManageStrategy::kConsolidate:
      return std::make_unique<ConsolidateManager>(spec);
  }
  throw std::logic_error("unhandled manage strategy");
}

}  // namespace evolab
