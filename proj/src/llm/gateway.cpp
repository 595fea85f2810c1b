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

#include "evolab/llm/gateway.h"

#include <cstdlib>

#include "evolab/core/enum_names.h"
#include "evolab/llm/http_backend.h"
#include "evolab/llm/stub_backend.h"

namespace evolab {

CompletionUsage& CompletionUsage::operator+=(const CompletionUsage& other) {
  tokens_in += other.tokens_in;
  tokens_out += other.tokens_out;
  cost_usd += other.cost_usd;
  latency += other.latency;
  calls += other.calls;
  return *this;
}

void to_json(Json& j, const CompletionUsage& usage) {
  j = Json{{"tokens_in", usage.tokens_in},
           {"tokens_out", usage.tokens_out},
           {"cost_usd", usage.cost_usd},
           {"latency", usage.latency},
           {"calls", usage.calls}};
}

double PriceTable::cost(int64_t tokens_in, int64_t tokens_out) const {
  return (static_cast<double>(tokens_in) * input_per_million +
          static_cast<double>(tokens_out) * output_per_million) /
         1e6;
}

void UsageLedger::record(const std::string& tag, const CompletionUsage& usage) {
  std::lock_guard lock(mutex_);
  per_tag_[tag] += usage;
}

std::map<std::string, CompletionUsage> UsageLedger::per_tag() const {
  std::lock_guard lock(mutex_);
  return per_tag_;
}

CompletionUsage UsageLedger::total() const {
  std::lock_guard lock(mutex_);
  CompletionUsage sum;
  for (const auto& [_, u] : per_tag_) sum += u;
  return sum;
}

void UsageLedger::reset() {
  std::lock_guard lock(mutex_);
  per_tag_.clear();
}

Gateway::Gateway(std::shared_ptr<CompletionBackend> backend, PriceTable prices)
    : backend_(std::move(backend)), prices_(prices) {}

Completion Gateway::complete(const std::string& prompt,
                             const CompletionParams& params) {
  Completion c = backend_->complete(prompt, params);
  c.usage.cost_usd = prices_.cost(c.usage.tokens_in, c.usage.tokens_out);
  c.usage.calls = 1;
  ledger_.record(params.tag, c.usage);
  return c;
}

void Gateway::record(const std::string& tag, int64_t tokens_in,
                     int64_t tokens_out, double latency) {
  CompletionUsage u;
  u.tokens_in = tokens_in;
  u.tokens_out = tokens_out;
  u.cost_usd = prices_.cost(tokens_in, tokens_out);
  u.latency = latency;
  u.calls = 1;
  ledger_.record(tag, u);
}

bool Gateway::can_serve(const std::string& tag,
                        const std::string& prompt) const {
  return backend_->can_serve(tag, prompt);
}

std::map<std::string, CompletionUsage> Gateway::usage_ledger() const {
  return ledger_.per_tag();
}

void Gateway::reset_ledger() { ledger_.reset(); }

double Gateway::cost_units(const CompletionUsage& usage) const {
  if (prices_.is_zero()) {
    return static_cast<double>(usage.tokens_in + usage.tokens_out);
  }
  return usage.cost_usd;
}

double Gateway::total_cost_units() const { return cost_units(ledger_.total()); }

namespace {

constexpr EnumNames<LlmMode, 3> kModeNames{{
    {LlmMode::kReal, "real"},
    {LlmMode::kStub, "stub"},
    {LlmMode::kStubStrict, "stub-strict"},
}};

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return (v && *v) ? std::string(v) : std::move(fallback);
}

}  // namespace

std::string_view to_string(LlmMode mode) { return enum_name(kModeNames, mode); }

LlmMode parse_llm_mode(std::string_view text) {
  return enum_parse(kModeNames, text, "EVOLAB_LLM_MODE");
}

std::shared_ptr<CompletionBackend> make_backend_from_env() {
  const LlmMode mode = parse_llm_mode(env_or("EVOLAB_LLM_MODE", "stub"));
  if (mode == LlmMode::kReal) {
    HttpConfig config;
    config.base_url = env_or("EVOLAB_LLM_BASE_URL", "https://api.openai.com/v1");
    config.api_key = env_or("EVOLAB_LLM_API_KEY", "");
    config.model = env_or("EVOLAB_LLM_MODEL", "gpt-4o-mini");
    return std::make_shared<HttpBackend>(std::move(config));
  }
  auto fixtures = StubBackend::default_fixtures();
  const std::string extra = env_or("EVOLAB_LLM_FIXTURES", "");
  if (!extra.empty()) {
    for (auto& f : StubBackend::load_fixtures(extra)) fixtures.push_back(std::move(f));
  }
  return std::make_shared<StubBackend>(std::move(fixtures),
                                       mode == LlmMode::kStubStrict);
}

int64_t approx_tokens(std::string_view text) {
  return static_cast<int64_t>((text.size() + 3) / 4);
}

}  // namespace evolab
