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

#include <algorithm>
#include <cctype>
#include <set>

#include "evolab/genotype/strategies.h"

namespace evolab {
namespace {

std::set<std::string> token_set(const std::string& text) {
  std::set<std::string> out;
  std::string cur;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      out.insert(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.insert(std::move(cur));
  return out;
}

void keep_above(std::vector<ScoredItem>& scored, double min_score) {
  std::erase_if(scored, [&](const ScoredItem& s) { return s.score < min_score; });
}

class SemanticTopK final : public Retriever {
 public:
  explicit SemanticTopK(const RetrieveSpec& spec) : spec_(spec) {}

  std::vector<ScoredItem> retrieve(const MemoryRequest&, const EmbeddingVector& q,
                                   int budget, const StoreBackend& store) const override {
    auto out = store.top_k(q, budget);
    keep_above(out, spec_.min_score);
    return out;
  }

 private:
  RetrieveSpec spec_;
};

/// Best budget-1 items, then the best item of whichever outcome polarity is
/// still missing so successes and failures can be compared side by side.
class ContrastivePair final : public Retriever {
 public:
  explicit ContrastivePair(const RetrieveSpec& spec) : spec_(spec) {}

  std::vector<ScoredItem> retrieve(const MemoryRequest&, const EmbeddingVector& q,
                                   int budget, const StoreBackend& store) const override {
    if (budget <= 0) return {};
    auto ranked = store.top_k(q, static_cast<int>(store.size()));
    keep_above(ranked, spec_.min_score);
    if (static_cast<int>(ranked.size()) <= budget) return ranked;

    std::vector<ScoredItem> out(ranked.begin(), ranked.begin() + (budget - 1));
    bool has_success = false;
    bool has_failure = false;
    for (const auto& s : out) {
      (s.item.source_success ? has_success : has_failure) = true;
    }
    auto rest = ranked.begin() + (budget - 1);
    auto pick = rest;
    if (has_success != has_failure) {
      const bool want = !has_success;
      auto it = std::find_if(rest, ranked.end(), [&](const ScoredItem& s) {
        return s.item.source_success == want;
      });
      if (it != ranked.end()) pick = it;
    }
    out.push_back(*pick);
    std::sort(out.begin(), out.end(), ranks_before);
    return out;
  }

 private:
  RetrieveSpec spec_;
};

class FunctionMatch final : public Retriever {
 public:
  explicit FunctionMatch(const RetrieveSpec& spec) : spec_(spec) {}

  std::vector<ScoredItem> retrieve(const MemoryRequest& request, const EmbeddingVector&,
                                   int budget, const StoreBackend& store) const override {
    if (budget <= 0) return {};
    std::vector<ScoredItem> out;
    for (auto& item : store.items()) {
      const double score = function_match_score(StoreBackend::key_of(item), request.query);
      if (score > 0.0 && score >= spec_.min_score) out.push_back({std::move(item), score});
    }
    std::sort(out.begin(), out.end(), ranks_before);
    if (static_cast<int>(out.size()) > budget) out.resize(budget);
    return out;
  }

 private:
  RetrieveSpec spec_;
};

class ReturnAll final : public Retriever {
 public:
  std::vector<ScoredItem> retrieve(const MemoryRequest&, const EmbeddingVector&,
                                   int budget, const StoreBackend& store) const override {
    std::vector<ScoredItem> out;
    for (auto& item : store.items()) out.push_back({std::move(item), 1.0});
    std::sort(out.begin(), out.end(), ranks_before);
    if (static_cast<int>(out.size()) > budget) out.resize(std::max(budget, 0));
    return out;
  }
};

}  // namespace

double function_match_score(const std::string& key, const std::string& query) {
  const auto key_tokens = token_set(key);
  if (key_tokens.empty()) return 0.0;
  const auto query_tokens = token_set(query);
  std::size_t hits = 0;
  for (const auto& t : key_tokens) hits += query_tokens.contains(t) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(key_tokens.size());
}

std::unique_ptr<Retriever> make_retriever(const RetrieveSpec& spec) {
  switch (spec.strategy) {
    case RetrieveStrategy::kSemanticTopK:
      return std::make_unique<SemanticTopK>(spec);
    case RetrieveStrategy::kContrastivePair:
      return std::make_unique<ContrastivePair>(spec);
    case RetrieveStrategy::kFunctionMatch:
      return std::make_unique<FunctionMatch>(spec);
    case RetrieveStrategy::kReturnAll:
      return std::make_unique<ReturnAll>();
  }
  throw std::logic_error("unhandled retrieve strategy");
}

}  // namespace evolab
