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

#include "evolab/eval/metrics.h"

#include <algorithm>
#include <map>

#include "evolab/core/errors.h"

namespace evolab {
namespace {

struct TaskAttempts {
  std::string task_id;
  std::map<int, bool> success_by_attempt;
};

std::vector<TaskAttempts> group(const std::vector<EpisodeOutcome>& outcomes) {
  std::vector<TaskAttempts> tasks;
  std::map<std::string, std::size_t> index;
  for (const auto& o : outcomes) {
    auto [it, fresh] = index.emplace(o.task_id, tasks.size());
    if (fresh) tasks.push_back({o.task_id, {}});
    auto& attempts = tasks[it->second].success_by_attempt;
    if (o.attempt < 1 || !attempts.emplace(o.attempt, o.success).second) {
      throw ValidationError("task '" + o.task_id + "': invalid or repeated attempt " +
                            std::to_string(o.attempt));
    }
  }
  for (const auto& t : tasks) {
    if (t.success_by_attempt.rbegin()->first != static_cast<int>(t.success_by_attempt.size())) {
      throw ValidationError("task '" + t.task_id + "': attempts are not contiguous from 1");
    }
  }
  return tasks;
}

}  // namespace

void check_outcomes(const std::vector<EpisodeOutcome>& outcomes) { group(outcomes); }

double pass_at_k(const std::vector<EpisodeOutcome>& outcomes, int k) {
  if (k < 1) throw ValidationError("pass@k needs k >= 1");
  if (outcomes.empty()) throw ValidationError("pass@k over no outcomes");
  const auto tasks = group(outcomes);
  std::size_t solved = 0;
  for (const auto& t : tasks) {
    if (static_cast<int>(t.success_by_attempt.size()) < k) {
      throw ValidationError("task '" + t.task_id + "' has " +
                            std::to_string(t.success_by_attempt.size()) +
                            " attempts, pass@" + std::to_string(k) + " needs " +
                            std::to_string(k));
    }
    const auto first_k = t.success_by_attempt.upper_bound(k);
    solved += std::any_of(t.success_by_attempt.begin(), first_k,
                          [](const auto& entry) { return entry.second; })
                  ? 1
                  : 0;
  }
  return static_cast<double>(solved) / static_cast<double>(tasks.size());
}

std::vector<double> cumulative_accuracy(const std::vector<bool>& successes) {
  if (successes.empty()) throw ValidationError("cumulative accuracy of an empty sequence");
  std::vector<double> curve;
  curve.reserve(successes.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < successes.size(); ++i) {
    hits += successes[i] ? 1 : 0;
    curve.push_back(static_cast<double>(hits) / static_cast<double>(i + 1));
  }
  return curve;
}

}  // namespace evolab
