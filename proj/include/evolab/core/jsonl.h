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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace evolab {

using Json = nlohmann::json;

/// Compact single-line form. Object keys come out sorted, which is the
/// stable key order every emitted record relies on.
std::string dump_line(const Json& value);

/// Reads newline-delimited records. Blank lines are skipped. Parse
/// failures raise InitializationError naming the file and line.
std::vector<Json> read_jsonl(const std::filesystem::path& path);

void write_jsonl(const std::filesystem::path& path,
                 const std::vector<Json>& records);
void append_jsonl(const std::filesystem::path& path, const Json& record);

Json read_json_file(const std::filesystem::path& path);

/// Pretty-printed with a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& value);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     const std::string& text);

}  // namespace evolab
