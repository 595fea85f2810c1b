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
#include <string>
#include <string_view>
#include <vector>

#include "evolab/core/jsonl.h"

namespace evolab {

enum class ItemKind {
  kRawTrajectory,
  kInsight,
  kTip,
  kShortcut,
  kWorkflow,
  kToolSpec,
};

std::string_view to_string(ItemKind kind);
ItemKind parse_item_kind(std::string_view text);

/// The atomic unit of stored experience.
struct MemoryItem {
  std::string id;
  ItemKind kind = ItemKind::kRawTrajectory;
  std::string content;
  std::string source_task_id;
  /// Value of the owning provider's ingest counter when the item was minted.
  int64_t created_at_step = 0;
  double confidence = 1.0;
  int64_t hit_count = 0;
  /// Episodes in which this item was provided and the episode succeeded.
  int64_t success_assoc = 0;
  /// Whether the source episode succeeded. Contrastive retrieval pairs on it.
  bool source_success = false;
  /// Lookup key for keyed libraries (tool name). Empty means "use id".
  std::string key;
  /// Set on items minted by consolidation.
  std::vector<std::string> parent_ids;

  bool operator==(const MemoryItem&) const = default;
};

/// Throws ValidationError on a broken invariant (empty id or content,
/// confidence outside [0,1], success_assoc > hit_count, negative counts).
void check_item(const MemoryItem& item);

void to_json(Json& j, const MemoryItem& item);
void from_json(const Json& j, MemoryItem& item);

/// memory.jsonl: one item per line, stable key order.
void save_items(const std::filesystem::path& path,
                const std::vector<MemoryItem>& items);
/// Throws InitializationError naming `path` on unreadable or invalid records.
std::vector<MemoryItem> load_items(const std::filesystem::path& path);

}  // namespace evolab
