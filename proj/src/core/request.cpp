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

#include "evolab/core/request.h"

#include <array>

#include "evolab/core/enum_names.h"
#include "evolab/core/provider.h"

namespace evolab {
namespace {

constexpr EnumNames<Stage, 3> kStageNames{{
    {Stage::kPlanning, "planning"},
    {Stage::kExecution, "execution"},
    {Stage::kReflection, "reflection"},
}};

}  // namespace

std::string_view to_string(Stage stage) {
  return enum_name(kStageNames, stage);
}

Stage parse_stage(std::string_view text) {
  return enum_parse(kStageNames, text, "stage");
}

void to_json(Json& j, const ManageReport& report) {
  j = Json{{"merged", report.merged},
           {"pruned", report.pruned},
           {"deduplicated", report.deduplicated},
           {"ingest_counter", report.ingest_counter}};
}

IngestResult NullProvider::take_in_memory(const TrajectoryData&) {
  ++counter_;
  return {true, "0 items"};
}

MemoryResponse NullProvider::provide_memory(const MemoryRequest& request) {
  if (request.max_items < 0) {
    throw ValidationError("max_items must be >= 0");
  }
  return {};
}

std::string describe_items(const std::vector<MemoryItem>& items) {
  if (items.empty()) return "0 items";
  constexpr std::array kOrder{ItemKind::kRawTrajectory, ItemKind::kInsight,
                              ItemKind::kTip,           ItemKind::kShortcut,
                              ItemKind::kWorkflow,      ItemKind::kToolSpec};
  std::string out;
  for (ItemKind kind : kOrder) {
    std::size_t n = 0;
    for (const auto& item : items) n += item.kind == kind ? 1 : 0;
    if (n == 0) continue;
    if (!out.empty()) out += ", ";
    out += std::to_string(n) + " " + std::string(to_string(kind)) +
           (n == 1 ? " item" : " items");
  }
  return out;
}

}  // namespace evolab
