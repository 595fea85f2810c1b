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

#include "evolab/embed/store_backend.h"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "evolab/core/enum_names.h"
#include "evolab/core/errors.h"

namespace evolab {
namespace {

constexpr EnumNames<BackendKind, 3> kBackendNames{{
    {BackendKind::kVectorIndex, "vector_index"},
    {BackendKind::kAppendLog, "append_log"},
    {BackendKind::kKeyedLibrary, "keyed_library"},
}};

}  // namespace

std::string_view to_string(BackendKind kind) {
  return enum_name(kBackendNames, kind);
}

BackendKind parse_backend_kind(std::string_view text) {
  return enum_parse(kBackendNames, text, "store strategy");
}

bool ranks_before(const ScoredItem& a, const ScoredItem& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.item.created_at_step != b.item.created_at_step) {
    return a.item.created_at_step < b.item.created_at_step;
  }
  return a.item.id < b.item.id;
}

StoreBackend::StoreBackend(BackendKind kind,
                           std::shared_ptr<const HashingEmbedder> embedder)
    : kind_(kind), embedder_(std::move(embedder)) {
  if (!embedder_) throw std::invalid_argument("StoreBackend needs an embedder");
}

const std::string& StoreBackend::key_of(const MemoryItem& item) {
  return item.key.empty() ? item.id : item.key;
}

void StoreBackend::upsert(MemoryItem item) {
  check_item(item);
  std::unique_lock lock(mutex_);
  if (kind_ == BackendKind::kKeyedLibrary) {
    const std::string& key = key_of(item);
    auto k = keys_.find(key);
    if (k != keys_.end() && k->second != item.id) {
      throw ValidationError("keyed_library: key '" + key +
                            "' already held by '" + k->second + "'");
    }
  }
  auto it = index_.find(item.id);
  if (it != index_.end()) {
    const std::size_t pos = it->second;
    if (kind_ == BackendKind::kKeyedLibrary) keys_.erase(key_of(items_[pos]));
    if (kind_ == BackendKind::kVectorIndex) {
      vectors_[pos] = embedder_->embed(item.content);
    }
    items_[pos] = std::move(item);
    if (kind_ == BackendKind::kKeyedLibrary) {
      keys_[key_of(items_[pos])] = items_[pos].id;
    }
    return;
  }
  if (kind_ == BackendKind::kVectorIndex) {
    vectors_.push_back(embedder_->embed(item.content));
  }
  if (kind_ == BackendKind::kKeyedLibrary) keys_[key_of(item)] = item.id;
  index_.emplace(item.id, items_.size());
  items_.push_back(std::move(item));
}

bool StoreBackend::erase(const std::string& id) {
  std::unique_lock lock(mutex_);
  auto it = index_.find(id);
  if (it == index_.end()) return false;
  const std::size_t pos = it->second;
  if (kind_ == BackendKind::kKeyedLibrary) keys_.erase(key_of(items_[pos]));
  items_.erase(items_.begin() + static_cast<std::ptrdiff_t>(pos));
  if (kind_ == BackendKind::kVectorIndex) {
    vectors_.erase(vectors_.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  index_.erase(it);
  for (auto& [_, p] : index_) {
    if (p > pos) --p;
  }
  return true;
}

void StoreBackend::clear() {
  std::unique_lock lock(mutex_);
  items_.clear();
  vectors_.clear();
  index_.clear();
  keys_.clear();
}

std::size_t StoreBackend::size() const {
  std::shared_lock lock(mutex_);
  return items_.size();
}

bool StoreBackend::contains(const std::string& id) const {
  std::shared_lock lock(mutex_);
  return index_.contains(id);
}

std::optional<MemoryItem> StoreBackend::get(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return items_[it->second];
}

std::vector<MemoryItem> StoreBackend::items() const {
  std::shared_lock lock(mutex_);
  return items_;
}

EmbeddingVector StoreBackend::embedding_for(std::size_t index) const {
  if (kind_ == BackendKind::kVectorIndex) return vectors_[index];
  return embedder_->embed(items_[index].content);
}

std::vector<ScoredItem> StoreBackend::top_k(const EmbeddingVector& query,
                                            int k) const {
  if (k < 0) throw std::invalid_argument("top_k: k must be >= 0");
  if (!provides_embeddings(kind_)) {
    throw std::logic_error("top_k: keyed_library has no embeddings");
  }
  std::shared_lock lock(mutex_);
  std::vector<ScoredItem> scored;
  scored.reserve(items_.size());
  for (std::size_t i = 0; i < items_.size(); ++i) {
    scored.push_back({items_[i], cosine(query, embedding_for(i))});
  }
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k),
                                                 scored.size());
  std::partial_sort(scored.begin(),
                    scored.begin() + static_cast<std::ptrdiff_t>(take),
                    scored.end(), ranks_before);
  scored.resize(take);
  return scored;
}

std::optional<MemoryItem> StoreBackend::find_by_key(
    const std::string& key) const {
  std::shared_lock lock(mutex_);
  if (kind_ == BackendKind::kKeyedLibrary) {
    auto k = keys_.find(key);
    if (k == keys_.end()) return std::nullopt;
    return items_[index_.at(k->second)];
  }
  for (const auto& item : items_) {
    if (key_of(item) == key) return item;
  }
  return std::nullopt;
}

std::optional<EmbeddingVector> StoreBackend::embedding(
    const std::string& id) const {
  if (!provides_embeddings(kind_)) return std::nullopt;
  std::shared_lock lock(mutex_);
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return embedding_for(it->second);
}

void StoreBackend::write_vector_files(
    const std::filesystem::path& directory) const {
  if (kind_ != BackendKind::kVectorIndex) return;
  std::shared_lock lock(mutex_);
  std::vector<std::string> ids;
  ids.reserve(items_.size());
  for (const auto& item : items_) ids.push_back(item.id);
  write_vectors(directory / "vectors.bin", directory / "vectors.ids", ids,
                vectors_);
}

}  // namespace evolab
