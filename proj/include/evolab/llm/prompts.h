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

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace evolab {

/// Versioned prompt templates shipped under assets/prompts/ and compiled
/// into the library. Names look like "encode_insight.v1".
std::string_view prompt_template(std::string_view name);
std::vector<std::string> prompt_names();

/// Fills {{FIELD}} slots of the named template. Newlines inside values are
/// flattened to spaces so that "FIELD: value" lines stay one line each.
std::string render_prompt(std::string_view name,
                          const std::map<std::string, std::string>& fields);

}  // namespace evolab
