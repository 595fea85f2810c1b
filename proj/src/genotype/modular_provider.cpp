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

#include "evolab/genotype/modular_provider.h"

#include <algorithm>
#include <cstdio>
#include <set>

#include "evolab/core/errors.h"
#include "evolab/core/jsonl.h"

namespace evolab {
namespace {

constexpr std::size_t kHistoryLimit = 64;
// Queries at least this similar may serve as a contrastive partner when no
// trajectory of the same family is available.
constexpr double kPartnerSimilarity = 0.5;

std::string item_id(int64_t counter, std::size_t index) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "m%06lld-%zu", static_cast<long long>(counter), index);
  return buf;
}

}  // namespace

std::shared_ptr<const HashingEmbedder> default_embedder() {
  static const auto kEmbedder = std::make_shared<const HashingEmbedder>();
  return kEmbedder;
}

ModularProvider::ModularProvider(MemoryGenotype genotype,
                                 std::shared_ptr<Gateway> gateway,
                                 std::shared_ptr<const HashingEmbedder> embedder)
    : genotype_(std::move(genotype)),
      gateway_(std::move(gateway)),
      embedder_(embedder ? std::move(embedder) : default_embedder()),
      store_(std::make_unique<StoreBackend>(genotype_.store.strategy, embedder_)),
      primary_(make_encoder(genotype_.encode.strategy, genotype_.encode)),
      retriever_(make_retriever(genotype_.retrieve)),
      manager_(make_manager(genotype_.manage)) {
  if (genotype_.encode.secondary) {
    secondary_ = make_encoder(*genotype_.encode.secondary, genotype_.encode);
  }
}

bool ModularProvider::initialize(const std::filesystem::path& directory) {
  if (bound_ && *bound_ == directory) return true;
  store_->clear();
  history_.clear();
  counter_ = 0;
  directory_ = directory;
  if (!directory.empty()) {
    std::filesystem::create_directories(directory);
    load(directory);
  }
  bound_ = directory;
  return true;
}

void ModularProvider::load(const std::filesystem::path& directory) {
  const auto memory_path = directory / "memory.jsonl";
  if (!std::filesystem::exists(memory_path)) return;
  for (auto& item : load_items(memory_path)) {
    counter_ = std::max(counter_, item.created_at_step);
    try {
      store_->upsert(std::move(item));
    } catch (const ValidationError& e) {
      throw InitializationError(memory_path, e.what());
    }
  }
  const auto bin_path = directory / "vectors.bin";
  if (store_->kind() != BackendKind::kVectorIndex || !std::filesystem::exists(bin_path)) {
    return;
  }
  // Persisted vectors must equal the vectors regenerated from text.
  const auto file = read_vectors(bin_path, directory / "vectors.ids");
  if (file.ids.size() != store_->size()) {
    throw InitializationError(bin_path, "vector count does not match memory.jsonl");
  }
  for (std::size_t i = 0; i < file.ids.size(); ++i) {
    const auto expected = store_->embedding(file.ids[i]);
    if (!expected) {
      throw InitializationError(bin_path, "unknown item id '" + file.ids[i] + "'");
    }
    if (!(*expected == file.vectors[i])) {
      throw InitializationError(bin_path, "vector for '" + file.ids[i] +
                                              "' differs from its re-embedded text");
    }
  }
}

const TrajectoryData* ModularProvider::contrastive_partner(
    const TrajectoryData& t, const EmbeddingVector& query_vector) const {
  const TrajectoryData* best = nullptr;
  double best_score = kPartnerSimilarity;
  for (auto it = history_.rbegin(); it != history_.rend(); ++it) {
    const auto& past = it->trajectory;
    if (past.success == t.success) continue;
    if (!t.family_id.empty() && past.family_id == t.family_id) return &past;
    const double score = cosine(query_vector, it->query_vector);
    if (score >= best_score) {
      best = &past;
      best_score = score;
    }
  }
  return best;
}

std::vector<EncodedDraft> ModularProvider::encode(const TrajectoryData& t,
                                                  const EmbeddingVector& query_vector) const {
  const EncodeContext ctx{gateway_.get(), embedder_.get()};
  const auto filter = genotype_.encode.success_filter;
  std::vector<EncodedDraft> drafts;
  if (filter == SuccessFilter::kSuccessOnly && !t.success) return drafts;

  if (filter == SuccessFilter::kContrastive &&
      genotype_.encode.strategy != EncodeStrategy::kVerbatim) {
    if (const auto* partner = contrastive_partner(t, query_vector)) {
      drafts = t.success ? primary_->encode_pair(t, *partner, ctx)
                         : primary_->encode_pair(*partner, t, ctx);
    } else if (t.success) {
      drafts = primary_->encode(t, ctx);
    }
  } else {
    drafts = primary_->encode(t, ctx);
  }
  if (secondary_) {
    auto more = secondary_->encode(t, ctx);
    drafts.insert(drafts.end(), std::make_move_iterator(more.begin()),
                  std::make_move_iterator(more.end()));
  }
  return drafts;
}

void ModularProvider::enforce_capacity() {
  if (!genotype_.store.capacity) return;
  const auto cap = static_cast<std::size_t>(*genotype_.store.capacity);
  if (store_->size() <= cap) return;
  auto items = store_->items();
  std::stable_sort(items.begin(), items.end(), [](const MemoryItem& a, const MemoryItem& b) {
    return a.created_at_step < b.created_at_step;
  });
  for (std::size_t i = 0; i + cap < items.size(); ++i) store_->erase(items[i].id);
}

IngestResult ModularProvider::take_in_memory(const TrajectoryData& trajectory) {
  try {
    check_trajectory(trajectory);
  } catch (const ValidationError& e) {
    return {false, std::string("invalid trajectory: ") + e.what()};
  }
  const EmbeddingVector query_vector = embedder_->embed(trajectory.query);
  std::vector<EncodedDraft> drafts;
  try {
    drafts = encode(trajectory, query_vector);
  } catch (const GatewayError& e) {
    return {false, std::string("encode failed: ") + e.what()};
  }

  const int64_t step = counter_ + 1;
  std::vector<MemoryItem> fresh;
  for (std::size_t i = 0; i < drafts.size(); ++i) {
    auto& d = drafts[i];
    MemoryItem item;
    item.kind = d.kind;
    item.content = std::move(d.content);
    item.source_task_id = trajectory.task_id;
    item.created_at_step = step;
    item.confidence = d.confidence;
    item.source_success = d.source_success;
    item.key = std::move(d.key);
    item.id = item_id(step, i);
    if (!item.key.empty()) {
      // A re-synthesized tool replaces the older version and keeps its stats.
      item.id = "tool:" + item.key;
      if (auto existing = store_->find_by_key(item.key)) {
        item.id = existing->id;
        item.hit_count = existing->hit_count;
        item.success_assoc = existing->success_assoc;
      } else if (auto existing_id = store_->get(item.id)) {
        item.hit_count = existing_id->hit_count;
        item.success_assoc = existing_id->success_assoc;
      }
    }
    if (item.content.empty()) continue;
    fresh.push_back(std::move(item));
  }

  // All-or-nothing commit.
  std::vector<std::pair<std::string, std::optional<MemoryItem>>> undo;
  try {
    for (const auto& item : fresh) {
      check_item(item);
      undo.emplace_back(item.id, store_->get(item.id));
      store_->upsert(item);
    }
  } catch (const Error& e) {
    for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
      if (it->second) {
        store_->upsert(*it->second);
      } else {
        store_->erase(it->first);
      }
    }
    return {false, std::string("store failed: ") + e.what()};
  }
  counter_ = step;
  enforce_capacity();
  history_.push_back({trajectory, query_vector});
  if (history_.size() > kHistoryLimit) history_.pop_front();
  return {true, describe_items(fresh)};
}

MemoryResponse ModularProvider::provide_memory(const MemoryRequest& request) {
  if (request.max_items < 0) throw ValidationError("max_items must be >= 0");
  const auto& spec = genotype_.retrieve;
  if (spec.stage_filter &&
      std::find(spec.stage_filter->begin(), spec.stage_filter->end(), request.stage) ==
          spec.stage_filter->end()) {
    return {};
  }
  const int budget = spec.strategy == RetrieveStrategy::kReturnAll
                         ? request.max_items
                         : std::min(spec.k, request.max_items);
  if (budget == 0 || store_->size() == 0) return {};

  const EmbeddingVector query_vector =
      provides_embeddings(store_->kind()) ? embedder_->embed(request.query) : EmbeddingVector{};
  auto ranked = retriever_->retrieve(request, query_vector, budget, *store_);
  MemoryResponse response;
  for (auto& scored : ranked) {
    store_->update(scored.item.id, [](MemoryItem& m) { ++m.hit_count; });
    ++scored.item.hit_count;
    response.items.push_back(std::move(scored.item));
    response.scores.push_back(scored.score);
  }
  return response;
}

ManageReport ModularProvider::manage() {
  const ManageReport report = manager_->manage(*store_, *embedder_, counter_);
  if (!directory_.empty()) {
    Json line;
    to_json(line, report);
    append_jsonl(directory_ / "manage.log", line);
  }
  return report;
}

void ModularProvider::record_outcome(std::span<const std::string> item_ids, bool success) {
  if (!success) return;
  std::set<std::string> seen;
  for (const auto& id : item_ids) {
    if (!seen.insert(id).second) continue;
    store_->update(id, [](MemoryItem& m) {
      if (m.success_assoc < m.hit_count) ++m.success_assoc;
    });
  }
}

int ModularProvider::manage_cadence() const {
  return genotype_.manage.strategy == ManageStrategy::kNone ? 0 : genotype_.manage.trigger_every;
}

void ModularProvider::persist() const {
  if (directory_.empty()) return;
  std::filesystem::create_directories(directory_);
  save_items(directory_ / "memory.jsonl", store_->items());
  store_->write_vector_files(directory_);
  // Present even when no manage pass ran, so every run dir has the same layout.
  if (!std::filesystem::exists(directory_ / "manage.log")) {
    write_text_file(directory_ / "manage.log", "");
  }
}

std::unique_ptr<ModularProvider> instantiate(const MemoryGenotype& genotype,
                                             std::shared_ptr<Gateway> gateway,
                                             std::shared_ptr<const HashingEmbedder> embedder) {
  const auto violations = validate(genotype);
  if (!violations.empty()) {
    std::string msg = "invalid genotype '" + genotype.name + "':";
    for (const auto& v : violations) msg += "\n  - " + v;
    throw ValidationError(msg);
  }
  return std::make_unique<ModularProvider>(genotype, std::move(gateway), std::move(embedder));
}

}  // namespace evolab
