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

#include "evolab/llm/prompts.h"

#include <algorithm>

#include "assets.h"
#include "evolab/core/errors.h"
#include "evolab/llm/stub_backend.h"

namespace evolab {

std::string_view prompt_template(std::string_view name) {
  for (const auto& p : assets::prompts()) {
    if (p.name == name) return p.text;
  }
  throw Error("unknown prompt template '" + std::string(name) + "'");
}

std::vector<std::string> prompt_names() {
  std::vector<std::string> names;
  for (const auto& p : assets::prompts()) names.emplace_back(p.name);
  std::sort(names.begin(), names.end());
  return names;
}

std::string render_prompt(std::string_view name,
                          const std::map<std::string, std::string>& fields) {
  std::map<std::string, std::string> flat;
  for (const auto& [k, v] : fields) {
    std::string value = v;
    std::replace(value.begin(), value.end(), '\n', ' ');
    std::replace(value.begin(), value.end(), '\r', ' ');
    flat.emplace(k, std::move(value));
  }
  return fill_slots(std::string(prompt_template(name)), flat);
}

}  // namespace evolab
