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

#include <chrono>
#include <cstdint>
#include <string>

#include "evolab/llm/gateway.h"

namespace evolab {

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{8000};

  /// Delay before attempt `attempt` (1-based retry index).
  std::chrono::milliseconds backoff(int attempt) const;
};

struct HttpConfig {
  /// e.g. "https://api.openai.com/v1". "/chat/completions" is appended.
  std::string base_url;
  std::string api_key;
  std::string model;
  RetryPolicy retry;
  std::chrono::seconds timeout{120};
};

/// OpenAI-compatible chat-completions client.
///
/// Retries transport failures, 429 and 5xx with exponential backoff; other
/// statuses fail immediately. Usage comes from the response's "usage"
/// object and latency is wall time of the successful attempt.
class HttpBackend final : public CompletionBackend {
 public:
  explicit HttpBackend(HttpConfig config);

  Completion complete(const std::string& prompt,
                      const CompletionParams& params) override;
  bool can_serve(const std::string&, const std::string&) const override {
    return true;
  }
  std::string_view mode() const override { return "real"; }

 private:
  HttpConfig config_;
  std::string scheme_host_port_;
  std::string path_prefix_;
};

}  // namespace evolab
