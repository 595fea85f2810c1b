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
#include <string>
#include <string_view>
#include <vector>

#include "evolab/eval/metrics.h"
#include "evolab/inner/episode.h"
#include "evolab/llm/gateway.h"

namespace evolab {

/// One persisted candidate: summary.json plus trajectories.jsonl.
struct CandidateRun {
  std::filesystem::path dir;
  int iteration = 0;
  int candidate = 0;
  std::string name;
  std::string genotype_hash;
  std::string parent_hash;
  std::vector<std::string> lineage;
  int attempts = 1;
  std::string mode;
  FeedbackSummary summary;
  std::vector<EpisodeRecord> episodes;
};

/// A `run` output directory (one candidate) or an `evolve` root with
/// iter-<k>/cand-<j> children, in (iteration, candidate) order. Throws
/// InitializationError when neither layout is present.
std::vector<CandidateRun> load_candidate_runs(const std::filesystem::path& run_dir);

enum class Protocol { kExact, kJudge };

std::string_view to_string(Protocol protocol);
Protocol parse_protocol(std::string_view text);

struct CandidateEvaluation {
  int iteration = 0;
  int candidate = 0;
  std::string name;
  /// pass@1 .. pass@passk.
  std::vector<double> pass_at;
  /// Mean over every attempt.
  double accuracy = 0.0;
  std::size_t judge_parse_warnings = 0;
  std::size_t judge_errors = 0;
  std::vector<EpisodeOutcome> outcomes;
};

/// Rescores every stored prediction against its gold answer. The judge
/// protocol needs a gateway; its failures score false and are counted.
std::vector<CandidateEvaluation> evaluate_run(const std::filesystem::path& run_dir,
                                              Protocol protocol, int passk,
                                              Gateway* judge = nullptr);

Json evaluation_json(const std::vector<CandidateEvaluation>& evaluations, Protocol protocol,
                     int passk);

/// Writes candidates.csv, pareto.csv, lineage.txt, cumulative_accuracy.csv
/// and report.md into out_dir, computed from trajectories.jsonl and
/// summary.json only.
void write_report(const std::filesystem::path& run_dir, const std::filesystem::path& out_dir);

}  // namespace evolab
