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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace evolab {

inline constexpr std::size_t kDefaultEmbeddingDim = 256;
inline constexpr uint64_t kDefaultEmbeddingSeed = 0x65766f6c6162ULL;

/// Unit-normalized dense vector; all-zero for text with no n-grams.
struct EmbeddingVector {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
  bool is_zero() const;
  bool operator==(const EmbeddingVector&) const = default;
};

/// Signed feature hashing of character n-grams.
///
/// Text is ASCII case-folded, every non-alphanumeric byte becomes a space,
/// runs of spaces collapse and the result is padded with one space on each
/// side. Each distinct n-gram adds +1 or -1 (hash sign bit) to bucket hash % dim.
/// The output is a pure function of (text, dim, seed, n).
class HashingEmbedder {
 public:
  explicit HashingEmbedder(std::size_t dim = kDefaultEmbeddingDim,
                           uint64_t seed = kDefaultEmbeddingSeed,
                           std::size_t ngram = 3);

  EmbeddingVector embed(std::string_view text) const;

  std::size_t dim() const { return dim_; }
  uint64_t seed() const { return seed_; }

 private:
  std::size_t dim_;
  uint64_t seed_;
  std::size_t ngram_;
};

/// Normalization applied before n-gram extraction.
std::string normalize_for_embedding(std::string_view text);

/// Inner product of two unit vectors, clamped to [-1, 1]. Zero vectors give
/// 0. Throws std::invalid_argument on dimension mismatch.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

/// vectors.bin: u32 dimension, u64 count, then count*dim little-endian
/// float64 values. Ids go to a sidecar manifest, one per line.
void write_vectors(const std::filesystem::path& bin_path,
                   const std::filesystem::path& manifest_path,
                   const std::vector<std::string>& ids,
                   const std::vector<EmbeddingVector>& vectors);

struct VectorFile {
  std::vector<std::string> ids;
  std::vector<EmbeddingVector> vectors;
};

/// Throws InitializationError naming the file on a malformed layout.
VectorFile read_vectors(const std::filesystem::path& bin_path,
                        const std::filesystem::path& manifest_path);

}  // namespace evolab
