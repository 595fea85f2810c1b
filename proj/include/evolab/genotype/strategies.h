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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "evolab/core/memory_item.h"
#include "evolab/core/request.h"
#include "evolab/core/trajectory.h"
#include "evolab/embed/embedding.h"
#include "evolab/embed/store_backend.h"
#include "evolab/genotype/genotype.h"
#include "evolab/llm/gateway.h"

namespace evolab {

// ---------------------------------------------------------------------------
// Encode

/// An item before the provider assigns id and ingest step.
struct EncodedDraft {
  ItemKind kind = ItemKind::kRawTrajectory;
  std::string content;
  std::string key;
  double confidence = 1.0;
  bool source_success = false;
};

struct EncodeContext {
  /// Null for providers without a gateway; LLM encoders then fail.
  Gateway* gateway = nullptr;
  const HashingEmbedder* embedder = nullptr;
};

class Encoder {
 public:
  virtual ~Encoder() = default;

  /// May throw GatewayError.
  virtual std::vector<EncodedDraft> encode(const TrajectoryData& trajectory,
                                           const EncodeContext& context) const = 0;

  /// Contrastive form over a success/failure pair. Defaults to encoding the
  /// successful trajectory alone.
  virtual std::vector<EncodedDraft> encode_pair(const TrajectoryData& success,
                                                const TrajectoryData& failure,
                                                const EncodeContext& context) const {
    (void)failure;
    return encode(success, context);
  }
};

std::unique_ptr<Encoder> make_encoder(EncodeStrategy strategy,
                                      const EncodeSpec& params);

/// Prompt fields shared by the LLM encoders: TASK_ID, QUERY, OUTCOME,
/// STEP_COUNT, ACTIONS, SOLUTION_KEY, FAILED_KEYS, ANSWER.
std::map<std::string, std::string> trajectory_fields(const TrajectoryData& t);

/// Text inside the first pair of parentheses of an action, "" if none.
std::string action_argument(const std::string& action);

/// Observation marking an unsuccessful tool call.
inline constexpr std::string_view kNotFound = "NOT_FOUND";

/// Cuts at a UTF-8 boundary at or below max_bytes.
std::string truncate_utf8(const std::string& text, std::size_t max_bytes);

// ---------------------------------------------------------------------------
// Retrieve

class Retriever {
 public:
  virtual ~Retriever() = default;

  /// At most `budget` items, ordered by ranks_before (scores non-increasing).
  virtual std::vector<ScoredItem> retrieve(const MemoryRequest& request,
                                           const EmbeddingVector& query_vector,
                                           int budget,
                                           const StoreBackend& store) const = 0;
};

std::unique_ptr<Retriever> make_retriever(const RetrieveSpec& spec);

/// Fraction of the key's tokens (split on non-alphanumerics, case-folded)
/// that occur in `query`.
double function_match_score(const std::string& key, const std::string& query);

// ---------------------------------------------------------------------------
// Manage

class Manager {
 public:
  virtual ~Manager() = default;

  /// `ingest_counter` stamps the report and ids of minted items.
  virtual ManageReport manage(StoreBackend& store, const HashingEmbedder& embedder,
                              int64_t ingest_counter) const = 0;
};

std::unique_ptr<Manager> make_manager(const ManageSpec& spec);

/// (success_assoc + confidence) / (hit_count + 1). Items that are retrieved
/// and then co-occur with failures sink; untouched items keep their prior.
double item_utility(const MemoryItem& item);

}  // namespace evolab
