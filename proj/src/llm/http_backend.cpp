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

#include "evolab/llm/http_backend.h"

#include <algorithm>
#include <cmath>
#include <thread>

#include <httplib.h>

#include "evolab/core/errors.h"
#include "evolab/core/jsonl.h"

namespace evolab {

std::chrono::milliseconds RetryPolicy::backoff(int attempt) const {
  const double ms = static_cast<double>(initial_backoff.count()) *
                    std::pow(multiplier, std::max(0, attempt - 1));
  return std::chrono::milliseconds(static_cast<int64_t>(
      std::min(ms, static_cast<double>(max_backoff.count()))));
}

HttpBackend::HttpBackend(HttpConfig config) : config_(std::move(config)) {
  if (config_.retry.max_attempts < 1) {
    throw std::invalid_argument("retry.max_attempts must be >= 1");
  }
  std::string url = config_.base_url;
  while (!url.empty() && url.back() == '/') url.pop_back();
  const std::size_t scheme_end = url.find("://");
  const std::size_t host_start =
      scheme_end == std::string::npos ? 0 : scheme_end + 3;
  const std::size_t path_start = url.find('/', host_start);
  if (path_start == std::string::npos) {
    scheme_host_port_ = url;
  } else {
    scheme_host_port_ = url.substr(0, path_start);
    path_prefix_ = url.substr(path_start);
  }
}

namespace {

bool retryable(int status) { return status == 429 || status >= 500; }

}  // namespace

Completion HttpBackend::complete(const std::string& prompt,
                                 const CompletionParams& params) {
  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);

  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }
  const Json body{
      {"model", config_.model},
      {"messages", Json::array({Json{{"role", "user"}, {"content", prompt}}})},
      {"temperature", params.temperature},
      {"max_tokens", params.max_tokens}};
  const std::string payload = body.dump();
  const std::string path = path_prefix_ + "/chat/completions";

  int last_status = 0;
  int attempts = 0;
  std::string last_error;
  for (int attempt = 1; attempt <= config_.retry.max_attempts; ++attempt) {
    attempts = attempt;
    if (attempt > 1) std::this_thread::sleep_for(config_.retry.backoff(attempt - 1));
    const auto start = std::chrono::steady_clock::now();
    auto res = client.Post(path, headers, payload, "application/json");
    if (!res) {
      last_status = 0;
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    last_status = res->status;
    if (res->status != 200) {
      last_error = "HTTP " + std::to_string(res->status);
      if (!retryable(res->status)) break;
      continue;
    }
    try {
      const Json reply = Json::parse(res->body);
      Completion c;
      c.text = reply.at("choices").at(0).at("message").at("content").get<std::string>();
      if (reply.contains("usage")) {
        const auto& u = reply.at("usage");
        c.usage.tokens_in = u.value("prompt_tokens", int64_t{0});
        c.usage.tokens_out = u.value("completion_tokens", int64_t{0});
      } else {
        c.usage.tokens_in = approx_tokens(prompt);
        c.usage.tokens_out = approx_tokens(c.text);
      }
      c.usage.latency = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
      return c;
    } catch (const std::exception& e) {
      throw GatewayError(res->status,
                         std::string("malformed completion response: ") + e.what());
    }
  }
  throw GatewayError(last_status, "completion failed after " +
                                      std::to_string(attempts) +
                                      " attempt(s) (tag '" + params.tag +
                                      "'): " + last_error);
}

}  // namespace evolab
