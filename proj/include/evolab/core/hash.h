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
#include <string>
#include <string_view>

namespace evolab {

/// 64-bit FNV-1a. Stable across platforms and runs, unlike std::hash.
constexpr uint64_t fnv1a64(std::string_view text,
                           uint64_t basis = 14695981039346656037ULL) {
  uint64_t h = basis;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

/// splitmix64 finalizer.
constexpr uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr uint64_t stable_hash(std::string_view text, uint64_t seed = 0) {
  return mix64(fnv1a64(text) ^ mix64(seed));
}

/// Lower-case, zero-padded 16 digit hex.
std::string hex64(uint64_t value);

}  // namespace evolab
