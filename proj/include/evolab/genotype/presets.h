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

#include <string>
#include <string_view>
#include <vector>

#include "evolab/genotype/genotype.h"

namespace evolab {

/// Where a preset comes from in the published taxonomy of self-improving
/// memory systems, and how each stage was labelled there.
struct PresetInfo {
  std::string_view name;
  std::string_view row;  // roman numeral
  std::string_view system;
  std::string_view encode;
  std::string_view store;
  std::string_view retrieve;
  std::string_view manage;
  /// Set for rows whose store or retrieval is only approximated here.
  std::string_view fidelity_note;
};

const std::vector<PresetInfo>& preset_registry();
std::vector<std::string> preset_names();

/// Throws ValidationError listing the registry on an unknown name.
MemoryGenotype preset(std::string_view name);
const PresetInfo& preset_info(std::string_view name);

}  // namespace evolab
