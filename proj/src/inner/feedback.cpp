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

#include "evolab/inner/feedback.h"

#include <cmath>

#include "evolab/core/errors.h"

namespace evolab {
namespace {

/// Kahan-Babuska (Neumaier) running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

void check_feedback(const FeedbackVector& v) {
  if (!std::isfinite(v.perf) || !std::isfinite(v.cost) || !std::isfinite(v.delay)) {
    throw ValidationError("feedback components must be finite");
  }
  if (v.perf < 0.0 || v.perf > 1.0) throw ValidationError("perf outside [0,1]");
  if (v.cost < 0.0 || v.delay < 0.0) throw ValidationError("cost and delay must be >= 0");
}

FeedbackSummary aggregate(const std::vector<std::pair<std::string, FeedbackVector>>& feedbacks) {
  if (feedbacks.empty()) throw ValidationError("aggregate: empty feedback list");
  CompensatedSum perf, cost, delay;
  FeedbackSummary s;
  for (const auto& [task_id, v] : feedbacks) {
    check_feedback(v);
    perf.add(v.perf);
    cost.add(v.cost);
    delay.add(v.delay);
    s.per_task[task_id] = v;
  }
  s.n = feedbacks.size();
  const auto n = static_cast<double>(s.n);
  s.perf_mean = perf.value() / n;
  s.cost_mean = cost.value() / n;
  s.delay_mean = delay.value() / n;
  return s;
}

FeedbackSummary aggregate(const std::vector<FeedbackVector>& feedbacks) {
  std::vector<std::pair<std::string, FeedbackVector>> keyed;
  keyed.reserve(feedbacks.size());
  for (std::size_t i = 0; i < feedbacks.size(); ++i) {
    keyed.emplace_back(std::to_string(i), feedbacks[i]);
  }
  return aggregate(keyed);
}

void to_json(Json& j, const FeedbackVector& v) {
  j = Json{{"perf", v.perf}, {"cost", v.cost}, {"delay", v.delay}};
}

void from_json(const Json& j, FeedbackVector& v) {
  v.perf = j.at("perf").get<double>();
  v.cost = j.at("cost").get<double>();
  v.delay = j.at("delay").get<double>();
}

void to_json(Json& j, const FeedbackSummary& s) {
  j = Json{{"perf_mean", s.perf_mean},
           {"cost_mean", s.cost_mean},
           {"delay_mean", s.delay_mean},
           {"n", s.n},
           {"per_task", s.per_task}};
}

void from_json(const Json& j, FeedbackSummary& s) {
  s.perf_mean = j.at("perf_mean").get<double>();
  s.cost_mean = j.at("cost_mean").get<double>();
  s.delay_mean = j.at("delay_mean").get<double>();
  s.n = j.at("n").get<std::size_t>();
  s.per_task = j.at("per_task").get<std::map<std::string, FeedbackVector>>();
}

}  // namespace evolab
