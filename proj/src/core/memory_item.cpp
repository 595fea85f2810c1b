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

#include "evolab/core/memory_item.h"

#include <unordered_set>

#include "evolab/core/enum_names.h"
#include "evolab/core/errors.h"

namespace evolab {
namespace {

constexpr EnumNames<ItemKind, 6> kItemKindNames{{
    {ItemKind::kRawTrajectory, "raw_trajectory"},
    {ItemKind::kInsight, "insight"},
    {ItemKind::kTip, "tip"},
    {ItemKind::kShortcut, "shortcut"},
    {ItemKind::kWorkflow, "workflow"},
    {ItemKind::kToolSpec, "tool_spec"},
}};

}  // namespace

std::string_view to_string(ItemKind kind) {
  return enum_name(kItemKindNames, kind);
}

ItemKind parse_item_kind(std::string_view text) {
  return enum_parse(kItemKindNames, text, "item kind");
}

void check_item(const MemoryItem& item) {
  if (item.id.empty()) throw ValidationError("memory item has empty id");
  if (item.content.empty()) {
    throw ValidationError("memory item '" + item.id + "' has empty content");
  }
  if (!(item.confidence >= 0.0 && item.confidence <= 1.0)) {
    throw ValidationError("memory item '" + item.id +
                          "' confidence outside [0,1]");
  }
  if (item.success_assoc < 0 || item.hit_count < item.success_assoc) {
    throw ValidationError("memory item '" + item.id +
                          "' requires hit_count >= success_assoc >= 0");
  }
}

void to_json(Json& j, const MemoryItem& item) {
  j = Json{{"id", item.id},
           {"kind", to_string(item.kind)},
           {"content", item.content},
           {"source_task_id", item.source_task_id},
           {"created_at_step", item.created_at_step},
           {"confidence", item.confidence},
           {"hit_count", item.hit_count},
           {"success_assoc", item.success_assoc},
           {"source_success", item.source_success},
           {"key", item.key},
           {"parent_ids", item.parent_ids}};
}

void from_json(const Json& j, MemoryItem& item) {
  item.id = j.at("id").get<std::string>();
  item.kind = parse_item_kind(j.at("kind").get<std::string>());
  item.content = j.at("content").get<std::string>();
  item.source_task_id = j.value("source_task_id", std::string());
  item.created_at_step = j.value("created_at_step", int64_t{0});
  item.confidence = j.value("confidence", 1.0);
  item.hit_count = j.value("hit_count", int64_t{0});
  item.success_assoc = j.value("success_assoc", int64_t{0});
  item.source_success = j.value("source_success", false);
  item.key = j.value("key", std::string());
  item.parent_ids = j.value("parent_ids", std::vector<std::string>{});
}

void save_items(const std::filesystem::path& path,
                const std::vector<MemoryItem>& items) {
  std::vector<Json> records;
  records.reserve(items.size());
  for (const auto& item : items) records.emplace_back(item);
  write_jsonl(path, records);
}

std::vector<MemoryItem> load_items(const std::filesystem::path& path) {
  std::vector<MemoryItem> items;
  std::unordered_set<std::string> seen;
  const auto records = read_jsonl(path);
  for (std::size_t i = 0; i < records.size(); ++i) {
    try {
      auto item = records[i].get<MemoryItem>();
      check_item(item);
      if (!seen.insert(item.id).second) {
        throw ValidationError("duplicate id '" + item.id + "'");
      }
      items.push_back(std::move(item));
    } catch (const InitializationError&) {
      throw;
    } catch (const std::exception& e) {
      throw InitializationError(
          path, "record " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return items;
}

}  // namespace evolab
