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

#include "evolab/embed/embedding.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "evolab/core/errors.h"
#include "evolab/core/hash.h"
#include "evolab/core/jsonl.h"

namespace evolab {

bool EmbeddingVector::is_zero() const {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return v == 0.0; });
}

HashingEmbedder::HashingEmbedder(std::size_t dim, uint64_t seed,
                                 std::size_t ngram)
    : dim_(dim), seed_(seed), ngram_(ngram) {
  if (dim_ == 0 || ngram_ == 0) {
    throw std::invalid_argument("embedder dimension and n must be positive");
  }
}

std::string normalize_for_embedding(std::string_view text) {
  std::string out = " ";
  for (unsigned char c : text) {
    char mapped = ' ';
    if (std::isalnum(c)) {
      mapped = static_cast<char>(std::tolower(c));
    } else if (c >= 0x80) {
      mapped = static_cast<char>(c);  // keep UTF-8 bytes as-is
    }
    if (mapped == ' ' && out.back() == ' ') continue;
    out.push_back(mapped);
  }
  if (out.back() != ' ') out.push_back(' ');
  return out;
}

EmbeddingVector HashingEmbedder::embed(std::string_view text) const {
  EmbeddingVector v;
  v.values.assign(dim_, 0.0);
  const std::string norm = normalize_for_embedding(text);
  if (norm.size() <= 1) return v;  // nothing but padding
  const std::size_t n = std::min(ngram_, norm.size());
  // Each distinct n-gram counts once, so boilerplate repeated across lines
  // does not drown out the words that tell texts apart.
  std::vector<uint64_t> hashes;
  hashes.reserve(norm.size());
  for (std::size_t i = 0; i + n <= norm.size(); ++i) {
    hashes.push_back(stable_hash(std::string_view(norm).substr(i, n), seed_));
  }
  std::sort(hashes.begin(), hashes.end());
  hashes.erase(std::unique(hashes.begin(), hashes.end()), hashes.end());
  for (uint64_t h : hashes) {
    const double sign = (h >> 63) ? -1.0 : 1.0;
    v.values[(h & 0x7fffffffffffffffULL) % dim_] += sign;
  }
  double sq = 0.0;
  for (double x : v.values) sq += x * x;
  if (sq == 0.0) return v;  // every bucket cancelled out
  const double inv = 1.0 / std::sqrt(sq);
  for (double& x : v.values) x *= inv;
  return v;
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("cosine: dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()) + ")");
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) dot += a.values[i] * b.values[i];
  return std::clamp(dot, -1.0, 1.0);
}

namespace {

template <typename T>
void put_le(std::string& out, T value) {
  static_assert(std::endian::native == std::endian::little ||
                std::endian::native == std::endian::big);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(std::begin(bytes), std::end(bytes));
  }
  out.append(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(const std::string& in, std::size_t offset) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, in.data() + offset, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(std::begin(bytes), std::end(bytes));
  }
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_vectors(const std::filesystem::path& bin_path,
                   const std::filesystem::path& manifest_path,
                   const std::vector<std::string>& ids,
                   const std::vector<EmbeddingVector>& vectors) {
  if (ids.size() != vectors.size()) {
    throw std::invalid_argument("write_vectors: ids and vectors differ");
  }
  const uint32_t dim =
      vectors.empty() ? static_cast<uint32_t>(kDefaultEmbeddingDim)
                      : static_cast<uint32_t>(vectors.front().dim());
  std::string bin;
  put_le<uint32_t>(bin, dim);
  put_le<uint64_t>(bin, vectors.size());
  for (const auto& v : vectors) {
    if (v.dim() != dim) {
      throw std::invalid_argument("write_vectors: mixed dimensions");
    }
    for (double x : v.values) put_le<double>(bin, x);
  }
  write_text_file(bin_path, bin);
  std::string manifest;
  for (const auto& id : ids) manifest += id + "\n";
  write_text_file(manifest_path, manifest);
}

VectorFile read_vectors(const std::filesystem::path& bin_path,
                        const std::filesystem::path& manifest_path) {
  const std::string bin = read_text_file(bin_path);
  constexpr std::size_t kHeader = sizeof(uint32_t) + sizeof(uint64_t);
  if (bin.size() < kHeader) throw InitializationError(bin_path, "truncated header");
  const auto dim = get_le<uint32_t>(bin, 0);
  const auto count = get_le<uint64_t>(bin, sizeof(uint32_t));
  if (bin.size() != kHeader + count * dim * sizeof(double)) {
    throw InitializationError(bin_path, "size does not match header");
  }
  VectorFile file;
  std::size_t offset = kHeader;
  for (uint64_t i = 0; i < count; ++i) {
    EmbeddingVector v;
    v.values.resize(dim);
    for (uint32_t d = 0; d < dim; ++d) {
      v.values[d] = get_le<double>(bin, offset);
      offset += sizeof(double);
    }
    file.vectors.push_back(std::move(v));
  }
  const std::string manifest = read_text_file(manifest_path);
  std::size_t start = 0;
  while (start < manifest.size()) {
    std::size_t end = manifest.find('\n', start);
    if (end == std::string::npos) end = manifest.size();
    if (end > start) file.ids.push_back(manifest.substr(start, end - start));
    start = end + 1;
  }
  if (file.ids.size() != file.vectors.size()) {
    throw InitializationError(manifest_path,
                              "id count does not match vectors.bin");
  }
  return file;
}

}  // namespace evolab
