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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "evolab/core/jsonl.h"
#include "evolab/core/provider.h"
#include "evolab/inner/episode.h"
#include "evolab/inner/task.h"
#include "evolab/llm/gateway.h"
#include "evolab/llm/stub_backend.h"

namespace evolab::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("evolab-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

inline std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

/// Runs `program args...` through the shell, capturing stdout and stderr.
inline CommandResult run_command(const std::string& program, const std::vector<std::string>& args,
                                 const std::filesystem::path& scratch) {
  const auto log = scratch / ("cmd-" + std::to_string(std::random_device{}()) + ".log");
  std::string cmd = shell_quote(program);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " > " + shell_quote(log.string()) + " 2>&1";
  const int status = std::system(cmd.c_str());
  CommandResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.output = read_text_file(log);
  std::error_code ec;
  std::filesystem::remove(log, ec);
  return r;
}

inline std::shared_ptr<StubBackend> strict_stub() {
  return std::make_shared<StubBackend>(StubBackend::default_fixtures(), true);
}

inline std::shared_ptr<Gateway> strict_gateway() {
  return std::make_shared<Gateway>(strict_stub());
}

/// Two tasks per family: every family's first task, then every family's
/// second task.
inline std::vector<TaskSpec> exposure_stream(uint64_t seed, int families = 20) {
  TaskGenConfig config;
  config.families = families;
  config.tasks_per_family = 2;
  config.seed = seed;
  std::vector<TaskSpec> first;
  std::vector<TaskSpec> second;
  for (auto& t : generate_tasks(config)) {
    (t.task_id.ends_with("-t00") ? first : second).push_back(t);
  }
  first.insert(first.end(), second.begin(), second.end());
  return first;
}

struct ExposureDelays {
  double first = 0.0;
  double second = 0.0;
  double first_perf = 0.0;
  double second_perf = 0.0;
};

/// Mean delay and perf over each half of an exposure stream run.
inline ExposureDelays exposure_delays(const BatchResult& result) {
  ExposureDelays d;
  const std::size_t half = result.episodes.size() / 2;
  for (std::size_t i = 0; i < result.episodes.size(); ++i) {
    const auto& f = result.episodes[i].feedback;
    (i < half ? d.first : d.second) += f.delay;
    (i < half ? d.first_perf : d.second_perf) += f.perf;
  }
  d.first /= static_cast<double>(half);
  d.second /= static_cast<double>(half);
  d.first_perf /= static_cast<double>(half);
  d.second_perf /= static_cast<double>(half);
  return d;
}

/// A trajectory of `keys` lookups against `task`, ending in the answer when
/// the last key is the solution.
inline TrajectoryData scripted_trajectory(const TaskSpec& task, const std::vector<std::string>& keys) {
  TrajectoryData t;
  t.task_id = task.task_id;
  t.family_id = task.family_id;
  t.query = task.query;
  t.gold_answer = task.gold_answer;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    TrajectoryStep s;
    s.index = static_cast<int>(i);
    s.action = "lookup(" + keys[i] + ")";
    auto it = task.tool_table.find(keys[i]);
    s.observation = it == task.tool_table.end() ? "NO_SUCH_KEY" : it->second;
    s.tokens_in = 40;
    s.tokens_out = 4;
    t.steps.push_back(s);
  }
  t.prediction = t.steps.empty() ? "" : t.steps.back().observation;
  t.reward = t.prediction == task.gold_answer ? 1.0 : 0.0;
  t.wall_delay = static_cast<double>(keys.size());
  finalize(t);
  return t;
}

/// The key whose lookup answers `task`.
inline std::string solution_key(const TaskSpec& task) {
  for (const auto& [k, v] : task.tool_table) {
    if (v == task.gold_answer) return k;
  }
  return {};
}

/// Keys of `task` that return NOT_FOUND.
inline std::vector<std::string> dead_keys(const TaskSpec& task) {
  std::vector<std::string> out;
  for (const auto& [k, v] : task.tool_table) {
    if (v != task.gold_answer) out.push_back(k);
  }
  return out;
}

}  // namespace evolab::testing
