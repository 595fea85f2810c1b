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

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "evolab/core/jsonl.h"
#include "evolab/genotype/genotype.h"
#include "evolab/inner/feedback.h"

namespace evolab {

/// (perf, -cost, -delay): higher is better in every component.
using SummaryVector = std::array<double, 3>;

SummaryVector summary_vector(const FeedbackSummary& summary);

/// a >= b component-wise with at least one strict inequality.
bool dominates(const SummaryVector& a, const SummaryVector& b);

/// Non-dominated sorting. Rank 0 is the Pareto front; rank r is the front
/// left after removing ranks below r. Equal vectors share a rank. Throws
/// ValidationError on an empty list or a non-finite component.
std::vector<int> pareto_rank(const std::vector<SummaryVector>& vectors);

struct CandidateRecord {
  MemoryGenotype genotype;
  FeedbackSummary summary;
  SummaryVector vector{};
  int pareto_rank = 0;
  int iteration = 0;
  /// Position j in the iteration's candidate list.
  int index = 0;
  std::string genotype_hash;
  /// Architecture hash of the parent, empty for the initial candidate.
  std::string parent_hash;
  std::filesystem::path run_dir;
};

/// Fills vector from summary and genotype_hash from genotype.
CandidateRecord make_record(MemoryGenotype genotype, FeedbackSummary summary, int iteration,
                            int index, std::string parent_hash = {});

/// Sets pareto_rank on every record.
void assign_ranks(std::vector<CandidateRecord>& records);

/// Orders by (pareto_rank asc, perf desc, name asc), with genotype hash and
/// the remaining vector components as final keys so any permutation of the
/// input gives the same result, and returns the first K. Throws
/// ValidationError when K < 1.
std::vector<CandidateRecord> select_parents(std::vector<CandidateRecord> candidates, int K);

}  // namespace evolab
