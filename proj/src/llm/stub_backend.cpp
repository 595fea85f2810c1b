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

#include "evolab/llm/stub_backend.h"

#include <cctype>
#include <sstream>

#include "assets.h"
#include "evolab/core/errors.h"
#include "evolab/core/hash.h"
#include "evolab/core/jsonl.h"

namespace evolab {
namespace {

constexpr std::string_view kWildcard = "*";

std::vector<StubFixture> parse_fixture_lines(std::string_view text,
                                             const std::string& origin) {
  std::vector<StubFixture> out;
  std::size_t start = 0;
  int line_no = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const std::string line(text.substr(start, end - start));
    start = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const Json j = Json::parse(line);
      out.push_back({j.at("tag").get<std::string>(),
                     j.value("prompt_hash", std::string(kWildcard)),
                     j.at("response").get<std::string>()});
    } catch (const std::exception& e) {
      throw InitializationError(origin,
                                "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

std::string prompt_hash(const std::string& prompt) {
  return hex64(fnv1a64(prompt));
}

std::map<std::string, std::string> prompt_fields(const std::string& prompt) {
  std::map<std::string, std::string> fields;
  std::istringstream in(prompt);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t i = 0;
    while (i < line.size() &&
           (std::isupper(static_cast<unsigned char>(line[i])) ||
            std::isdigit(static_cast<unsigned char>(line[i])) || line[i] == '_')) {
      ++i;
    }
    if (i == 0 || i + 1 >= line.size() || line[i] != ':' || line[i + 1] != ' ') {
      continue;
    }
    fields.emplace(line.substr(0, i), line.substr(i + 2));
  }
  return fields;
}

std::string fill_slots(const std::string& text,
                       const std::map<std::string, std::string>& fields) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t open = text.find("{{", pos);
    if (open == std::string::npos) break;
    const std::size_t close = text.find("}}", open + 2);
    if (close == std::string::npos) break;
    out.append(text, pos, open - pos);
    auto it = fields.find(text.substr(open + 2, close - open - 2));
    if (it != fields.end()) out += it->second;
    pos = close + 2;
  }
  out.append(text, pos, std::string::npos);
  return out;
}

StubBackend::StubBackend(std::vector<StubFixture> fixtures, bool strict)
    : strict_(strict) {
  for (auto& f : fixtures) add(std::move(f));
}

void StubBackend::add(StubFixture fixture) {
  // Later fixtures override earlier ones for the same key.
  table_[{std::move(fixture.tag), std::move(fixture.prompt_hash)}] =
      std::move(fixture.response);
}

std::vector<StubFixture> StubBackend::default_fixtures() {
  return parse_fixture_lines(assets::default_fixtures(), "<builtin fixtures>");
}

std::vector<StubFixture> StubBackend::load_fixtures(
    const std::filesystem::path& path) {
  return parse_fixture_lines(read_text_file(path), path.string());
}

const std::string* StubBackend::lookup(const std::string& tag,
                                       const std::string& hash) const {
  if (auto it = table_.find({tag, hash}); it != table_.end()) return &it->second;
  if (auto it = table_.find({tag, std::string(kWildcard)}); it != table_.end()) {
    return &it->second;
  }
  return nullptr;
}

bool StubBackend::can_serve(const std::string& tag,
                            const std::string& prompt) const {
  return lookup(tag, prompt_hash(prompt)) != nullptr;
}

Completion StubBackend::complete(const std::string& prompt,
                                 const CompletionParams& params) {
  const std::string hash = prompt_hash(prompt);
  Completion c;
  if (const std::string* response = lookup(params.tag, hash)) {
    c.text = fill_slots(*response, prompt_fields(prompt));
  } else if (strict_) {
    throw FixtureMissError(params.tag);
  } else {
    c.text = "[stub:" + params.tag + ":" + hash + "]";
  }
  c.usage.tokens_in = approx_tokens(prompt);
  c.usage.tokens_out = approx_tokens(c.text);
  return c;
}

}  // namespace evolab
