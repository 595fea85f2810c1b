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
#include <string>
#include <string_view>
#include <utility>

#include "evolab/core/errors.h"

namespace evolab {

template <typename E, std::size_t N>
using EnumNames = std::array<std::pair<E, std::string_view>, N>;

template <typename E, std::size_t N>
std::string_view enum_name(const EnumNames<E, N>& names, E value) {
  for (const auto& [e, name] : names) {
    if (e == value) return name;
  }
  return "?";
}

/// Throws ValidationError listing the accepted spellings.
template <typename E, std::size_t N>
E enum_parse(const EnumNames<E, N>& names, std::string_view text,
             std::string_view what) {
  std::string allowed;
  for (const auto& [e, name] : names) {
    if (name == text) return e;
    if (!allowed.empty()) allowed += ", ";
    allowed += name;
  }
  throw ValidationError("unknown " + std::string(what) + " '" +
                        std::string(text) + "' (expected one of: " + allowed +
                        ")");
}

}  // namespace evolab
