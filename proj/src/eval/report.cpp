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

#include "evolab/eval/report.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <regex>
#include <functional>
#include <optional>
#include <sstream>

#include "evolab/core/enum_names.h"
#include "evolab/core/errors.h"
#include "evolab/eval/scoring.h"
#include "evolab/meta/pareto.h"

namespace evolab {
namespace {

constexpr EnumNames<Protocol, 2> kProtocolNames{{
    {Protocol::kExact, "exact"},
    {Protocol::kJudge, "judge"},
}};

namespace fs = std::filesystem;

// Children named <prefix><n>, sorted by n.
std::vector<std::pair<int, fs::path>> numbered(const fs::path& dir, const std::string& prefix) {
  std::vector<std::pair<int, fs::path>> out;
  const std::regex pattern(prefix + "([0-9]+)");
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (entry.is_directory() && std::regex_match(name, m, pattern)) {
      out.emplace_back(std::stoi(m[1].str()), entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string string_or(const Json& j, const char* key, std::string fallback) {
  if (j.contains(key) && j.at(key).is_string()) return j.at(key).get<std::string>();
  return fallback;
}

CandidateRun load_candidate(const fs::path& dir, int iteration, int candidate) {
  const auto summary_path = dir / "summary.json";
  const auto trajectories = dir / "trajectories.jsonl";
  if (!fs::exists(summary_path) || !fs::exists(trajectories)) {
    throw InitializationError(dir, "candidate directory needs summary.json and trajectories.jsonl");
  }
  const Json s = read_json_file(summary_path);
  CandidateRun run;
  run.dir = dir;
  run.iteration = s.value("iteration", iteration);
  run.candidate = s.value("candidate", candidate);
  run.name = string_or(s, "name", dir.filename().string());
  run.genotype_hash = string_or(s, "genotype_hash", "");
  run.parent_hash = string_or(s, "parent_hash", "");
  if (s.contains("lineage")) run.lineage = s.at("lineage").get<std::vector<std::string>>();
  run.attempts = s.value("attempts", 1);
  run.mode = string_or(s, "mode", "online");
  run.summary = s.get<FeedbackSummary>();
  run.episodes = load_episode_records(trajectories);
  return run;
}

std::string full(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, r.ptr);
}

std::string fixed2(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

// CSV field: quoted only when needed.
std::string csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

double mean_steps(const CandidateRun& run) {
  if (run.episodes.empty()) return 0.0;
  double total = 0.0;
  for (const auto& e : run.episodes) total += static_cast<double>(e.trajectory.steps.size());
  return total / static_cast<double>(run.episodes.size());
}

// Ranks recomputed within each iteration from the summary means.
std::vector<int> ranks_by_iteration(const std::vector<CandidateRun>& runs) {
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < runs.size(); ++i) groups[runs[i].iteration].push_back(i);
  std::vector<int> ranks(runs.size(), 0);
  for (const auto& [iteration, members] : groups) {
    std::vector<SummaryVector> vectors;
    for (auto i : members) vectors.push_back(summary_vector(runs[i].summary));
    const auto r = pareto_rank(vectors);
    for (std::size_t m = 0; m < members.size(); ++m) ranks[members[m]] = r[m];
  }
  return ranks;
}

std::string describe(const CandidateRun& r) {
  return r.name + " [iter " + std::to_string(r.iteration) + " cand " +
         std::to_string(r.candidate) + "] perf " + fixed2(r.summary.perf_mean) + " cost " +
         fixed2(r.summary.cost_mean) + " delay " + fixed2(r.summary.delay_mean);
}

std::string lineage_tree(const std::vector<CandidateRun>& runs) {
  // A child attaches to the latest earlier candidate carrying its parent hash.
  std::vector<std::vector<std::size_t>> children(runs.size());
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::optional<std::size_t> parent;
    if (!runs[i].parent_hash.empty()) {
      for (std::size_t p = 0; p < runs.size(); ++p) {
        if (runs[p].iteration < runs[i].iteration && runs[p].genotype_hash == runs[i].parent_hash &&
            (!parent || runs[p].iteration > runs[*parent].iteration)) {
          parent = p;
        }
      }
    }
    if (parent) {
      children[*parent].push_back(i);
    } else {
      roots.push_back(i);
    }
  }
  std::string out;
  std::function<void(std::size_t, int)> walk = [&](std::size_t i, int depth) {
    out += std::string(static_cast<std::size_t>(depth) * 2, ' ') + describe(runs[i]) + "\n";
    for (auto c : children[i]) walk(c, depth + 1);
  };
  for (auto r : roots) walk(r, 0);
  return out;
}

}  // namespace

std::string_view to_string(Protocol protocol) { return enum_name(kProtocolNames, protocol); }

Protocol parse_protocol(std::string_view text) {
  return enum_parse(kProtocolNames, text, "protocol");
}

std::vector<CandidateRun> load_candidate_runs(const fs::path& run_dir) {
  if (!fs::is_directory(run_dir)) throw InitializationError(run_dir, "not a directory");
  if (fs::exists(run_dir / "trajectories.jsonl")) return {load_candidate(run_dir, 0, 0)};
  std::vector<CandidateRun> runs;
  for (const auto& [k, iter_dir] : numbered(run_dir, "iter-")) {
    for (const auto& [j, cand_dir] : numbered(iter_dir, "cand-")) {
      if (fs::exists(cand_dir / "trajectories.jsonl")) runs.push_back(load_candidate(cand_dir, k, j));
    }
  }
  if (runs.empty()) {
    throw InitializationError(run_dir, "no trajectories.jsonl here or under iter-*/cand-*");
  }
  return runs;
}

std::vector<CandidateEvaluation> evaluate_run(const fs::path& run_dir, Protocol protocol,
                                              int passk, Gateway* judge) {
  if (passk < 1) throw ValidationError("passk must be >= 1");
  if (protocol == Protocol::kJudge && !judge) {
    throw ValidationError("the judge protocol needs a gateway");
  }
  std::vector<CandidateEvaluation> out;
  for (const auto& run : load_candidate_runs(run_dir)) {
    CandidateEvaluation e;
    e.iteration = run.iteration;
    e.candidate = run.candidate;
    e.name = run.name;
    std::size_t correct = 0;
    for (const auto& rec : run.episodes) {
      const auto& t = rec.trajectory;
      bool ok = false;
      if (protocol == Protocol::kExact) {
        ok = score_exact(t.prediction, t.gold_answer);
      } else {
        const JudgeResult verdict = score_judge(*judge, t.query, t.prediction, t.gold_answer);
        ok = verdict.correct;
        e.judge_parse_warnings += verdict.parse_warning ? 1 : 0;
        e.judge_errors += verdict.error ? 1 : 0;
      }
      correct += ok ? 1 : 0;
      e.outcomes.push_back({t.task_id, rec.attempt, ok, rec.feedback});
    }
    if (e.outcomes.empty()) {
      throw ValidationError(run.dir.string() + ": no episodes to evaluate");
    }
    e.accuracy = static_cast<double>(correct) / static_cast<double>(e.outcomes.size());
    for (int k = 1; k <= passk; ++k) {
      try {
        e.pass_at.push_back(pass_at_k(e.outcomes, k));
      } catch (const ValidationError& err) {
        throw ValidationError(run.dir.string() + ": " + err.what());
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

Json evaluation_json(const std::vector<CandidateEvaluation>& evaluations, Protocol protocol,
                     int passk) {
  Json candidates = Json::array();
  for (const auto& e : evaluations) {
    Json pass = Json::object();
    for (std::size_t k = 0; k < e.pass_at.size(); ++k) {
      pass["pass@" + std::to_string(k + 1)] = e.pass_at[k];
    }
    candidates.push_back(Json{{"iteration", e.iteration},
                              {"candidate", e.candidate},
                              {"name", e.name},
                              {"episodes", e.outcomes.size()},
                              {"accuracy", e.accuracy},
                              {"pass_at", pass},
                              {"judge_parse_warnings", e.judge_parse_warnings},
                              {"judge_errors", e.judge_errors}});
  }
  return Json{{"protocol", to_string(protocol)}, {"passk", passk}, {"candidates", candidates}};
}

void write_report(const fs::path& run_dir, const fs::path& out_dir) {
  const auto runs = load_candidate_runs(run_dir);
  const auto ranks = ranks_by_iteration(runs);
  fs::create_directories(out_dir);

  std::ostringstream table;
  table << "iteration,candidate,name,genotype_hash,parent_hash,perf,cost,delay,mean_steps,"
           "episodes,pareto_rank\n";
  std::ostringstream front;
  front << "iteration,candidate,name,perf,cost,delay\n";
  std::ostringstream curve;
  curve << "iteration,candidate,i,accuracy\n";
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    const std::string where = std::to_string(r.iteration) + "," + std::to_string(r.candidate);
    table << where << "," << csv(r.name) << "," << r.genotype_hash << "," << r.parent_hash << ","
          << full(r.summary.perf_mean) << "," << full(r.summary.cost_mean) << ","
          << full(r.summary.delay_mean) << "," << full(mean_steps(r)) << "," << r.episodes.size()
          << "," << ranks[i] << "\n";
    if (ranks[i] == 0) {
      front << where << "," << csv(r.name) << "," << full(r.summary.perf_mean) << ","
            << full(r.summary.cost_mean) << "," << full(r.summary.delay_mean) << "\n";
    }
    if (!r.episodes.empty()) {
      std::vector<bool> successes;
      for (const auto& e : r.episodes) successes.push_back(e.trajectory.success);
      const auto c = cumulative_accuracy(successes);
      for (std::size_t n = 0; n < c.size(); ++n) {
        curve << where << "," << n + 1 << "," << full(c[n]) << "\n";
      }
    }
  }
  const std::string tree = lineage_tree(runs);

  std::ostringstream md;
  md << "# Run report\n\n";
  md << "Source: `" << run_dir.filename().string() << "`, " << runs.size() << " candidate(s). "
     << "Repeated attempts of a task share the candidate's online memory and run in task "
     << "order.\n\n";
  md << "## Candidates\n\n";
  md << "| iter | cand | name | perf | cost | delay | mean steps | episodes | rank |\n";
  md << "|---:|---:|---|---:|---:|---:|---:|---:|---:|\n";
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    md << "| " << r.iteration << " | " << r.candidate << " | " << r.name << " | "
       << fixed2(r.summary.perf_mean) << " | " << fixed2(r.summary.cost_mean) << " | "
       << fixed2(r.summary.delay_mean) << " | " << fixed2(mean_steps(r)) << " | "
       << r.episodes.size() << " | " << ranks[i] << " |\n";
  }
  md << "\n## Pareto front per iteration\n\n";
  std::map<int, std::vector<std::string>> fronts;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (ranks[i] == 0) fronts[runs[i].iteration].push_back(runs[i].name);
  }
  for (const auto& [iteration, names] : fronts) {
    md << "- iteration " << iteration << ":";
    for (const auto& n : names) md << " " << n;
    md << "\n";
  }
  md << "\n## Lineage\n\n```\n" << tree << "```\n\n";
  md << "Data files: candidates.csv, pareto.csv, lineage.txt, cumulative_accuracy.csv.\n";

  write_text_file(out_dir / "candidates.csv", table.str());
  write_text_file(out_dir / "pareto.csv", front.str());
  write_text_file(out_dir / "cumulative_accuracy.csv", curve.str());
  write_text_file(out_dir / "lineage.txt", tree);
  write_text_file(out_dir / "report.md", md.str());
}

}  // namespace evolab
