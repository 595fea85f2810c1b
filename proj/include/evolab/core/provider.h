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
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "evolab/core/memory_item.h"
#include "evolab/core/request.h"
#include "evolab/core/trajectory.h"

namespace evolab {

struct IngestResult {
  bool ok = false;
  /// "N <kind> items" breakdown on success, the failure cause otherwise.
  std::string description;
};

/// The four-stage memory contract (encode, store, retrieve, manage).
///
/// A provider is single-writer: callers serialize take_in_memory,
/// provide_memory and manage on one instance. Distinct instances share
/// nothing mutable.
class MemoryProvider {
 public:
  virtual ~MemoryProvider() = default;

  /// Binds the provider to `directory` and loads memory.jsonl from it when
  /// present. An empty path keeps state in memory only. Idempotent.
  /// Throws InitializationError naming the file on corrupt state.
  virtual bool initialize(const std::filesystem::path& directory) = 0;

  /// Encode + store. All-or-nothing: on failure the store is untouched.
  virtual IngestResult take_in_memory(const TrajectoryData& trajectory) = 0;

  /// Retrieve. Throws ValidationError when max_items < 0.
  virtual MemoryResponse provide_memory(const MemoryRequest& request) = 0;

  /// Manage. Never grows the store.
  virtual ManageReport manage() = 0;

  /// Post-episode utility bookkeeping for items that were provided.
  virtual void record_outcome(std::span<const std::string> item_ids,
                              bool success) = 0;

  /// Every `manage_cadence()` ingests the harness calls manage(); 0 = never.
  virtual int manage_cadence() const = 0;

  virtual int64_t ingest_counter() const = 0;
  virtual std::vector<MemoryItem> snapshot() const = 0;

  /// Writes memory state into the directory given to initialize().
  virtual void persist() const = 0;
};

/// A provider that remembers nothing. Baseline for memory-benefit checks.
class NullProvider final : public MemoryProvider {
 public:
  bool initialize(const std::filesystem::path&) override { return true; }
  IngestResult take_in_memory(const TrajectoryData& trajectory) override;
  MemoryResponse provide_memory(const MemoryRequest& request) override;
  ManageReport manage() override { return {0, 0, 0, counter_}; }
  void record_outcome(std::span<const std::string>, bool) override {}
  int manage_cadence() const override { return 0; }
  int64_t ingest_counter() const override { return counter_; }
  std::vector<MemoryItem> snapshot() const override { return {}; }
  void persist() const override {}

 private:
  int64_t counter_ = 0;
};

/// Counts items per kind as "2 insight items, 1 raw_trajectory item", or
/// "0 items" when empty.
std::string describe_items(const std::vector<MemoryItem>& items);

}  // namespace evolab
