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

#include <string>
#include <vector>

#include "evolab/inner/feedback.h"

namespace evolab {

struct EpisodeOutcome {
  std::string task_id;
  /// 1-based; contiguous per task.
  int attempt = 1;
  bool success = false;
  FeedbackVector feedback;
};

/// Throws ValidationError naming the task when its attempts are not exactly
/// 1..n (in any order).
void check_outcomes(const std::vector<EpisodeOutcome>& outcomes);

/// Best-of-k: fraction of tasks with at least one success among attempts
/// 1..k. Throws ValidationError naming the first task (in order of first
/// appearance) with fewer than k attempts, or when k < 1 or there are no
/// outcomes.
double pass_at_k(const std::vector<EpisodeOutcome>& outcomes, int k);

/// c_i = mean of the first i successes. Throws ValidationError when empty.
std::vector<double> cumulative_accuracy(const std::vector<bool>& successes);

}  // namespace evolab
