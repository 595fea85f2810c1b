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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evolab/core/jsonl.h"
#include "evolab/core/memory_item.h"

namespace evolab {

enum class Stage { kPlanning, kExecution, kReflection };

std::string_view to_string(Stage stage);
Stage parse_stage(std::string_view text);

struct MemoryRequest {
  std::string query;
  /// Recent interaction history.
  std::string context;
  Stage stage = Stage::kPlanning;
  int max_items = 0;
  /// Free-form agent status. No schema.
  std::map<std::string, std::string> status;
};

struct MemoryResponse {
  std::vector<MemoryItem> items;
  /// Parallel to items, non-increasing.
  std::vector<double> scores;
  std::optional<std::string> rationale;

  bool empty() const { return items.empty(); }
};

struct ManageReport {
  int64_t merged = 0;
  int64_t pruned = 0;
  int64_t deduplicated = 0;
  int64_t ingest_counter = 0;

  int64_t removed() const { return merged + pruned + deduplicated; }
  bool operator==(const ManageReport&) const = default;
};

void to_json(Json& j, const ManageReport& report);

}  // namespace evolab
