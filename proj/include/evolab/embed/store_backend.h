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
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "evolab/core/memory_item.h"
#include "evolab/embed/embedding.h"

namespace evolab {

enum class BackendKind { kVectorIndex, kAppendLog, kKeyedLibrary };

std::string_view to_string(BackendKind kind);
BackendKind parse_backend_kind(std::string_view text);

/// Whether top_k is available on this backend kind.
constexpr bool provides_embeddings(BackendKind kind) {
  return kind != BackendKind::kKeyedLibrary;
}

struct ScoredItem {
  MemoryItem item;
  double score = 0.0;
};

/// Strict total order used by every ranked listing: score descending, then
/// created_at_step ascending, then id ascending.
bool ranks_before(const ScoredItem& a, const ScoredItem& b);

/// Item storage for one provider.
///
///  - vector_index caches one embedding per item and persists vectors.bin;
///  - append_log keeps insertion order only and embeds at query time;
///  - keyed_library indexes items by a unique key and has no embeddings.
///
/// Single writer, many readers.
class StoreBackend {
 public:
  StoreBackend(BackendKind kind, std::shared_ptr<const HashingEmbedder> embedder);

  StoreBackend(const StoreBackend&) = delete;
  StoreBackend& operator=(const StoreBackend&) = delete;

  BackendKind kind() const { return kind_; }

  /// Inserts or replaces by id. For keyed_library, throws ValidationError
  /// when the item's key is already held by a different id.
  void upsert(MemoryItem item);
  bool erase(const std::string& id);
  void clear();

  std::size_t size() const;
  bool contains(const std::string& id) const;
  std::optional<MemoryItem> get(const std::string& id) const;

  /// Applies `fn` to the stored item in place. Returns false if absent.
  template <typename Fn>
  bool update(const std::string& id, Fn&& fn) {
    std::unique_lock lock(mutex_);
    auto it = index_.find(id);
    if (it == index_.end()) return false;
    fn(items_[it->second]);
    return true;
  }

  /// Items in insertion order.
  std::vector<MemoryItem> items() const;

  /// Exhaustive exact search. k > size returns everything; k < 0 throws
  /// std::invalid_argument; keyed_library throws std::logic_error.
  std::vector<ScoredItem> top_k(const EmbeddingVector& query, int k) const;

  std::optional<MemoryItem> find_by_key(const std::string& key) const;

  /// Key used by keyed_library for an item.
  static const std::string& key_of(const MemoryItem& item);

  /// Cached embedding (vector_index) or freshly computed one (append_log).
  std::optional<EmbeddingVector> embedding(const std::string& id) const;

  /// vector_index only: writes vectors.bin and vectors.ids into directory.
  void write_vector_files(const std::filesystem::path& directory) const;

 private:
  EmbeddingVector embedding_for(std::size_t index) const;

  BackendKind kind_;
  std::shared_ptr<const HashingEmbedder> embedder_;
  mutable std::shared_mutex mutex_;
  std::vector<MemoryItem> items_;
  std::vector<EmbeddingVector> vectors_;  // vector_index only
  std::unordered_map<std::string, std::size_t> index_;
  std::map<std::string, std::string> keys_;  // keyed_library: key -> id
};

}  // namespace evolab
