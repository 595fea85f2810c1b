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
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "evolab/core/jsonl.h"

namespace evolab {

struct CompletionParams {
  double temperature = 0.0;
  int max_tokens = 512;
  /// Purpose label ("encode.insight", "judge", "diagnose", ...). Cost is
  /// attributed per tag.
  std::string tag;
};

struct CompletionUsage {
  int64_t tokens_in = 0;
  int64_t tokens_out = 0;
  double cost_usd = 0.0;
  double latency = 0.0;
  int64_t calls = 0;

  CompletionUsage& operator+=(const CompletionUsage& other);
  bool operator==(const CompletionUsage&) const = default;
};

void to_json(Json& j, const CompletionUsage& usage);

struct Completion {
  std::string text;
  CompletionUsage usage;
};

/// USD per million tokens.
struct PriceTable {
  double input_per_million = 0.0;
  double output_per_million = 0.0;

  bool is_zero() const {
    return input_per_million == 0.0 && output_per_million == 0.0;
  }
  double cost(int64_t tokens_in, int64_t tokens_out) const;
};

/// Something that turns a prompt into text. Implementations fill usage
/// token counts and latency; cost is applied by Gateway.
class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;
  virtual Completion complete(const std::string& prompt,
                              const CompletionParams& params) = 0;
  /// Whether complete() would answer from a real source: always for live
  /// backends, only on a fixture hit for stubs (lenient placeholders excluded).
  virtual bool can_serve(const std::string& tag,
                         const std::string& prompt) const = 0;
  virtual std::string_view mode() const = 0;
};

/// Per-tag cumulative usage. Totals only grow until reset().
class UsageLedger {
 public:
  void record(const std::string& tag, const CompletionUsage& usage);
  std::map<std::string, CompletionUsage> per_tag() const;
  CompletionUsage total() const;
  void reset();

 private:
  mutable std::mutex mutex_;
  std::map<std::string, CompletionUsage> per_tag_;
};

/// Single chokepoint for model calls: forwards to a backend and meters every
/// call into this gateway's ledger. One gateway per candidate scope; the
/// backend can be shared.
class Gateway {
 public:
  explicit Gateway(std::shared_ptr<CompletionBackend> backend,
                   PriceTable prices = {});

  /// Throws GatewayError (or FixtureMissError) when the backend fails.
  Completion complete(const std::string& prompt, const CompletionParams& params);

  /// Meters usage that did not come from a backend call (the simulated
  /// agent's synthetic token counts).
  void record(const std::string& tag, int64_t tokens_in, int64_t tokens_out,
              double latency = 0.0);

  bool can_serve(const std::string& tag, const std::string& prompt) const;

  std::map<std::string, CompletionUsage> usage_ledger() const;
  void reset_ledger();

  /// The cost dimension of the feedback vector: USD when a price table is
  /// configured, otherwise total tokens.
  double cost_units(const CompletionUsage& usage) const;
  double total_cost_units() const;

  const PriceTable& prices() const { return prices_; }
  CompletionBackend& backend() { return *backend_; }
  const std::shared_ptr<CompletionBackend>& shared_backend() const {
    return backend_;
  }

 private:
  std::shared_ptr<CompletionBackend> backend_;
  PriceTable prices_;
  UsageLedger ledger_;
};

enum class LlmMode { kReal, kStub, kStubStrict };

std::string_view to_string(LlmMode mode);
LlmMode parse_llm_mode(std::string_view text);

/// Reads EVOLAB_LLM_MODE (default stub), EVOLAB_LLM_BASE_URL,
/// EVOLAB_LLM_API_KEY, EVOLAB_LLM_MODEL and EVOLAB_LLM_FIXTURES.
std::shared_ptr<CompletionBackend> make_backend_from_env();

/// Synthetic token count for stub usage: ceil(bytes / 4).
int64_t approx_tokens(std::string_view text);

}  // namespace evolab
