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

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "evolab/llm/gateway.h"

namespace evolab {

/// One fixture line: {"tag": ..., "prompt_hash": ..., "response": ...}.
/// prompt_hash "*" matches every prompt under the tag.
struct StubFixture {
  std::string tag;
  std::string prompt_hash;
  std::string response;
};

std::string prompt_hash(const std::string& prompt);

/// Deterministic backend.
///
/// Lookup is exact (tag, prompt_hash) first, then the tag wildcard. A
/// response may contain {{FIELD}} slots; each is replaced by the value of
/// the prompt line "FIELD: value" (empty if the prompt has no such line).
/// On a miss, strict mode throws FixtureMissError; lenient mode answers
/// "[stub:<tag>:<hash>]". Usage is ceil(bytes/4) each way, zero latency.
class StubBackend final : public CompletionBackend {
 public:
  explicit StubBackend(std::vector<StubFixture> fixtures, bool strict = false);

  /// The fixture set compiled into the library.
  static std::vector<StubFixture> default_fixtures();
  /// Throws InitializationError naming the file.
  static std::vector<StubFixture> load_fixtures(const std::filesystem::path& path);

  Completion complete(const std::string& prompt,
                      const CompletionParams& params) override;
  bool can_serve(const std::string& tag,
                 const std::string& prompt) const override;
  std::string_view mode() const override {
    return strict_ ? "stub-strict" : "stub";
  }

  void add(StubFixture fixture);

 private:
  const std::string* lookup(const std::string& tag,
                            const std::string& hash) const;

  std::map<std::pair<std::string, std::string>, std::string> table_;
  bool strict_;
};

/// Parses "FIELD: value" lines (FIELD is [A-Z0-9_]+).
std::map<std::string, std::string> prompt_fields(const std::string& prompt);

/// Replaces every {{NAME}} in `text` from `fields`; unknown names become "".
std::string fill_slots(const std::string& text,
                       const std::map<std::string, std::string>& fields);

}  // namespace evolab
