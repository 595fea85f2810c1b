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

#include <deque>
#include <filesystem>
#include <memory>
#include <optional>

#include "evolab/core/provider.h"
#include "evolab/embed/embedding.h"
#include "evolab/embed/store_backend.h"
#include "evolab/genotype/genotype.h"
#include "evolab/genotype/strategies.h"
#include "evolab/llm/gateway.h"

namespace evolab {

/// A provider assembled from the four strategies a genotype names.
class ModularProvider final : public MemoryProvider {
 public:
  /// `gateway` may be null when no stage calls a model. The genotype must
  /// validate; use instantiate() for the checked path.
  ModularProvider(MemoryGenotype genotype, std::shared_ptr<Gateway> gateway,
                  std::shared_ptr<const HashingEmbedder> embedder = nullptr);

  bool initialize(const std::filesystem::path& directory) override;
  IngestResult take_in_memory(const TrajectoryData& trajectory) override;
  MemoryResponse provide_memory(const MemoryRequest& request) override;
  ManageReport manage() override;
  void record_outcome(std::span<const std::string> item_ids, bool success) override;
  int manage_cadence() const override;
  int64_t ingest_counter() const override { return counter_; }
  std::vector<MemoryItem> snapshot() const override { return store_->items(); }
  void persist() const override;

  const MemoryGenotype& genotype() const { return genotype_; }
  const StoreBackend& store() const { return *store_; }
  const std::filesystem::path& directory() const { return directory_; }

 private:
  struct Past {
    TrajectoryData trajectory;
    EmbeddingVector query_vector;
  };

  void load(const std::filesystem::path& directory);
  std::vector<EncodedDraft> encode(const TrajectoryData& t,
                                   const EmbeddingVector& query_vector) const;
  const TrajectoryData* contrastive_partner(const TrajectoryData& t,
                                            const EmbeddingVector& query_vector) const;
  void enforce_capacity();

  MemoryGenotype genotype_;
  std::shared_ptr<Gateway> gateway_;
  std::shared_ptr<const HashingEmbedder> embedder_;
  std::unique_ptr<StoreBackend> store_;
  std::unique_ptr<Encoder> primary_;
  std::unique_ptr<Encoder> secondary_;
  std::unique_ptr<Retriever> retriever_;
  std::unique_ptr<Manager> manager_;
  std::deque<Past> history_;
  int64_t counter_ = 0;
  std::optional<std::filesystem::path> bound_;
  std::filesystem::path directory_;
};

/// Validates, then builds the provider. Throws ValidationError listing every
/// violation when the genotype is invalid.
std::unique_ptr<ModularProvider> instantiate(
    const MemoryGenotype& genotype, std::shared_ptr<Gateway> gateway = nullptr,
    std::shared_ptr<const HashingEmbedder> embedder = nullptr);

/// Process-wide default embedder (256 dims, default seed).
std::shared_ptr<const HashingEmbedder> default_embedder();

}  // namespace evolab
