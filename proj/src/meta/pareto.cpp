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

#include "evolab/meta/pareto.h"

#include <algorithm>
#include <cmath>

#include "evolab/core/errors.h"

namespace evolab {

SummaryVector summary_vector(const FeedbackSummary& summary) {
  // 0.0 - x keeps a zero cost at +0.0 rather than -0.0.
  return {summary.perf_mean, 0.0 - summary.cost_mean, 0.0 - summary.delay_mean};
}

bool dominates(const SummaryVector& a, const SummaryVector& b) {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
    strict |= a[i] > b[i];
  }
  return strict;
}

std::vector<int> pareto_rank(const std::vector<SummaryVector>& vectors) {
  if (vectors.empty()) throw ValidationError("pareto_rank: empty input");
  for (const auto& v : vectors) {
    for (double x : v) {
      if (!std::isfinite(x)) throw ValidationError("pareto_rank: non-finite component");
    }
  }
  // Fast non-dominated sort: count dominators, then peel fronts.
  const std::size_t n = vectors.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<int> dominator_count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(vectors[i], vectors[j])) {
        dominated[i].push_back(j);
        ++dominator_count[j];
      } else if (dominates(vectors[j], vectors[i])) {
        dominated[j].push_back(i);
        ++dominator_count[i];
      }
    }
  }
  std::vector<int> rank(n, 0);
  std::vector<std::size_t> front;
  for (std::size_t i = 0; i < n; ++i) {
    if (dominator_count[i] == 0) front.push_back(i);
  }
  for (int r = 0; !front.empty(); ++r) {
    std::vector<std::size_t> next;
    for (std::size_t i : front) {
      rank[i] = r;
      for (std::size_t j : dominated[i]) {
        if (--dominator_count[j] == 0) next.push_back(j);
      }
    }
    front = std::move(next);
  }
  return rank;
}

CandidateRecord make_record(MemoryGenotype genotype, FeedbackSummary summary, int iteration,
                            int index, std::string parent_hash) {
  CandidateRecord r;
  r.genotype_hash = architecture_hash(genotype);
  r.genotype = std::move(genotype);
  r.vector = summary_vector(summary);
  r.summary = std::move(summary);
  r.iteration = iteration;
  r.index = index;
  r.parent_hash = std::move(parent_hash);
  return r;
}

void assign_ranks(std::vector<CandidateRecord>& records) {
  if (records.empty()) return;
  std::vector<SummaryVector> vectors;
  for (const auto& r : records) vectors.push_back(r.vector);
  const auto ranks = pareto_rank(vectors);
  for (std::size_t i = 0; i < records.size(); ++i) records[i].pareto_rank = ranks[i];
}

std::vector<CandidateRecord> select_parents(std::vector<CandidateRecord> candidates, int K) {
  if (K < 1) throw ValidationError("select_parents: K must be >= 1");
  std::sort(candidates.begin(), candidates.end(),
            [](const CandidateRecord& a, const CandidateRecord& b) {
              if (a.pareto_rank != b.pareto_rank) return a.pareto_rank < b.pareto_rank;
              if (a.vector[0] != b.vector[0]) return a.vector[0] > b.vector[0];
              if (a.genotype.name != b.genotype.name) return a.genotype.name < b.genotype.name;
              if (a.genotype_hash != b.genotype_hash) return a.genotype_hash < b.genotype_hash;
              if (a.vector[1] != b.vector[1]) return a.vector[1] > b.vector[1];
              return a.vector[2] > b.vector[2];
            });
  if (candidates.size() > static_cast<std::size_t>(K)) candidates.resize(K);
  return candidates;
}

}  // namespace evolab
