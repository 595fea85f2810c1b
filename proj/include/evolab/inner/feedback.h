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

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "evolab/core/jsonl.h"

namespace evolab {

/// Per-trajectory (task success, token consumption, latency).
struct FeedbackVector {
  double perf = 0.0;
  double cost = 0.0;
  double delay = 0.0;

  bool operator==(const FeedbackVector&) const = default;
};

/// Throws ValidationError on a non-finite component, perf outside [0,1] or
/// negative cost/delay.
void check_feedback(const FeedbackVector& v);

struct FeedbackSummary {
  double perf_mean = 0.0;
  double cost_mean = 0.0;
  double delay_mean = 0.0;
  std::size_t n = 0;
  std::map<std::string, FeedbackVector> per_task;
};

/// Component-wise arithmetic mean (compensated summation). per_task keeps
/// the last vector seen for a repeated task id. Throws ValidationError on an
/// empty list.
FeedbackSummary aggregate(const std::vector<std::pair<std::string, FeedbackVector>>& feedbacks);

/// Convenience form keyed "0", "1", ...
FeedbackSummary aggregate(const std::vector<FeedbackVector>& feedbacks);

void to_json(Json& j, const FeedbackVector& v);
void from_json(const Json& j, FeedbackVector& v);
void to_json(Json& j, const FeedbackSummary& s);
void from_json(const Json& j, FeedbackSummary& s);

}  // namespace evolab
