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

#include "evolab/meta/evolution.h"

#include <algorithm>
#include <future>
#include <map>
#include <set>
#include <thread>

#include "evolab/core/errors.h"
#include "evolab/core/hash.h"
#include "evolab/genotype/presets.h"
#include "evolab/meta/diagnose.h"

namespace evolab {
namespace {

const std::set<std::string> kConfigKeys{
    "K_max",   "K",    "S",    "n_new",        "n_reused",
    "seed",    "proposer", "elitism", "initial", "mode",
    "max_parallel", "price_input_per_million", "price_output_per_million"};

std::filesystem::path candidate_dir(const std::filesystem::path& root, int k, int j) {
  return root / ("iter-" + std::to_string(k)) / ("cand-" + std::to_string(j));
}

std::vector<std::string> task_ids(const std::vector<TaskSpec>& tasks) {
  std::vector<std::string> out;
  for (const auto& t : tasks) out.push_back(t.task_id);
  return out;
}

std::vector<TaskSpec> tasks_by_id(const std::vector<std::string>& ids,
                                  const std::vector<TaskSpec>& pool) {
  std::map<std::string, const TaskSpec*> index;
  for (const auto& t : pool) index[t.task_id] = &t;
  std::vector<TaskSpec> out;
  for (const auto& id : ids) {
    auto it = index.find(id);
    if (it == index.end()) throw ValidationError("state refers to unknown task '" + id + "'");
    out.push_back(*it->second);
  }
  return out;
}

struct Evaluation {
  CandidateRecord record;
  BatchResult batch;
};

Evaluation evaluate(const EvolutionState& state, const EvolutionContext& ctx,
                    const std::vector<TaskSpec>& tasks, std::size_t j) {
  const auto& genotype = state.candidates[j];
  const auto& parent_hash = state.candidate_parents[j];
  auto gateway = std::make_shared<Gateway>(ctx.backend, state.config.prices);
  BatchOptions options;
  options.mode = state.config.mode;
  options.seed = state.config.seed;
  if (!ctx.out_dir.empty()) {
    options.out_dir = candidate_dir(ctx.out_dir, state.k, static_cast<int>(j));
  }
  options.summary_extra = Json{{"name", genotype.name},
                               {"genotype_hash", architecture_hash(genotype)},
                               {"parent_hash", parent_hash.empty() ? Json(nullptr) : Json(parent_hash)},
                               {"iteration", state.k},
                               {"candidate", j},
                               {"lineage", genotype.lineage}};
  Evaluation e;
  e.batch = run_batch(genotype, tasks, gateway, options);
  e.record = make_record(genotype, e.batch.summary, state.k, static_cast<int>(j), parent_hash);
  e.record.run_dir = options.out_dir;
  return e;
}

std::vector<Evaluation> evaluate_all(const EvolutionState& state, const EvolutionContext& ctx,
                                     const std::vector<TaskSpec>& tasks) {
  const std::size_t n = state.candidates.size();
  std::size_t width = state.config.max_parallel > 0
                          ? static_cast<std::size_t>(state.config.max_parallel)
                          : std::max(1u, std::thread::hardware_concurrency());
  std::vector<Evaluation> out(n);
  for (std::size_t start = 0; start < n; start += width) {
    const std::size_t stop = std::min(n, start + width);
    std::vector<std::future<Evaluation>> running;
    for (std::size_t j = start; j < stop; ++j) {
      running.push_back(std::async(std::launch::async, [&, j] { return evaluate(state, ctx, tasks, j); }));
    }
    for (std::size_t j = start; j < stop; ++j) {
      try {
        out[j] = running[j - start].get();
      } catch (const std::exception& e) {
        for (std::size_t rest = j + 1; rest < stop; ++rest) {
          try {
            running[rest - start].get();
          } catch (...) {
          }
        }
        throw Error("iteration " + std::to_string(state.k) + ", candidate " + std::to_string(j) +
                    " ('" + state.candidates[j].name + "'): " + e.what());
      }
    }
  }
  return out;
}

}  // namespace

bool EvolutionConfig::operator==(const EvolutionConfig& o) const {
  return K_max == o.K_max && K == o.K && S == o.S && n_new == o.n_new &&
         n_reused == o.n_reused && seed == o.seed && proposer == o.proposer &&
         elitism == o.elitism && initial == o.initial && mode == o.mode &&
         max_parallel == o.max_parallel &&
         prices.input_per_million == o.prices.input_per_million &&
         prices.output_per_million == o.prices.output_per_million;
}

void check_config(const EvolutionConfig& c) {
  if (c.K_max < 1) throw ValidationError("K_max must be >= 1");
  if (c.K < 1) throw ValidationError("K must be >= 1");
  if (c.S < 1) throw ValidationError("S must be >= 1");
  if (c.n_new < 1) throw ValidationError("n_new must be >= 1");
  if (c.n_reused < 0) throw ValidationError("n_reused must be >= 0");
  if (c.max_parallel < 0) throw ValidationError("max_parallel must be >= 0");
  if (c.prices.input_per_million < 0 || c.prices.output_per_million < 0) {
    throw ValidationError("prices must be >= 0");
  }
}

void to_json(Json& j, const EvolutionConfig& c) {
  j = Json{{"K_max", c.K_max},
           {"K", c.K},
           {"S", c.S},
           {"n_new", c.n_new},
           {"n_reused", c.n_reused},
           {"seed", c.seed},
           {"proposer", to_string(c.proposer)},
           {"elitism", c.elitism},
           {"initial", c.initial},
           {"mode", to_string(c.mode)},
           {"max_parallel", c.max_parallel},
           {"price_input_per_million", c.prices.input_per_million},
           {"price_output_per_million", c.prices.output_per_million}};
}

void from_json(const Json& j, EvolutionConfig& c) {
  if (!j.is_object()) throw ValidationError("evolution config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kConfigKeys.contains(key)) throw ValidationError("unknown config key '" + key + "'");
  }
  c = EvolutionConfig{};
  try {
    c.K_max = j.value("K_max", c.K_max);
    c.K = j.value("K", c.K);
    c.S = j.value("S", c.S);
    c.n_new = j.value("n_new", c.n_new);
    c.n_reused = j.value("n_reused", c.n_reused);
    c.seed = j.value("seed", c.seed);
    if (j.contains("proposer")) c.proposer = parse_proposer(j.at("proposer").get<std::string>());
    c.elitism = j.value("elitism", c.elitism);
    c.initial = j.value("initial", c.initial);
    if (j.contains("mode")) c.mode = parse_run_mode(j.at("mode").get<std::string>());
    c.max_parallel = j.value("max_parallel", c.max_parallel);
    c.prices.input_per_million = j.value("price_input_per_million", 0.0);
    c.prices.output_per_million = j.value("price_output_per_million", 0.0);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("evolution config: ") + e.what());
  }
  check_config(c);
}

EvolutionConfig load_evolution_config(const std::filesystem::path& path) {
  try {
    return read_json_file(path).get<EvolutionConfig>();
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

MemoryGenotype resolve_initial(const std::string& initial, const std::filesystem::path& base_dir) {
  const auto names = preset_names();
  if (std::find(names.begin(), names.end(), initial) != names.end()) return preset(initial);
  std::filesystem::path path(initial);
  if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
  if (!std::filesystem::exists(path)) {
    std::string known;
    for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
    throw ValidationError("initial '" + initial + "' is neither a preset (" + known +
                          ") nor an existing genotype file");
  }
  return load_genotype(path);
}

std::size_t EvolutionState::candidates_evaluated() const {
  std::size_t n = 0;
  for (const auto& it : history) n += it.candidates.size();
  return n;
}

std::size_t EvolutionState::episodes_run() const {
  std::size_t n = 0;
  for (const auto& it : history) {
    for (const auto& c : it.candidates) n += c.summary.n;
  }
  return n;
}

EvolutionState initial_state(const EvolutionConfig& config, const MemoryGenotype& initial) {
  check_config(config);
  if (const auto v = validate(initial); !v.empty()) {
    throw ValidationError("initial genotype '" + initial.name + "' does not validate: " + v.front());
  }
  EvolutionState s;
  s.config = config;
  s.candidates = {initial};
  s.candidate_parents = {""};
  return s;
}

EvolutionState evolve_iteration(const EvolutionState& state, const EvolutionContext& ctx) {
  if (state.finished()) throw ValidationError("evolution already finished");
  if (!ctx.pool) throw ValidationError("evolve_iteration: task pool required");
  if (state.candidates.empty()) throw ValidationError("evolve_iteration: empty candidate set");
  const auto& cfg = state.config;

  TaskBatch batch = compose_batch(*ctx.pool, state.previous_batch ? &*state.previous_batch : nullptr,
                                  cfg.n_new, cfg.n_reused, cfg.seed, state.k);
  const auto tasks = batch.ordered();
  auto evaluations = evaluate_all(state, ctx, tasks);

  IterationRecord iteration;
  iteration.iteration = state.k;
  iteration.batch_task_ids = task_ids(tasks);
  for (auto& e : evaluations) iteration.candidates.push_back(e.record);
  assign_ranks(iteration.candidates);
  for (std::size_t j = 0; j < evaluations.size(); ++j) {
    evaluations[j].record.pareto_rank = iteration.candidates[j].pareto_rank;
  }
  const auto parents = select_parents(iteration.candidates, cfg.K);
  for (const auto& p : parents) iteration.selected.push_back(p.genotype_hash);

  EvolutionState next = state;
  next.k = state.k + 1;
  next.history.push_back(iteration);
  next.previous_batch = std::move(batch);
  next.candidates.clear();
  next.candidate_parents.clear();
  if (next.finished()) return next;

  const uint64_t design_seed = stable_hash("design#" + std::to_string(state.k), cfg.seed);
  for (const auto& parent : parents) {
    const auto& eval = evaluations[static_cast<std::size_t>(parent.index)];
    const DefectProfile profile = diagnose(parent.genotype, parent.summary, eval.batch.episodes,
                                           eval.batch.final_memory, ctx.meta_gateway);
    if (!parent.run_dir.empty()) {
      Json j;
      to_json(j, profile);
      write_json_file(parent.run_dir / "profile.json", j);
    }
    for (auto& child : design(parent.genotype, profile, cfg.S, cfg.proposer, design_seed,
                              ctx.meta_gateway)) {
      next.candidates.push_back(std::move(child));
      next.candidate_parents.push_back(parent.genotype_hash);
    }
  }
  if (cfg.elitism) {
    for (const auto& parent : parents) {
      next.candidates.push_back(parent.genotype);
      next.candidate_parents.push_back(parent.parent_hash);
    }
  }
  return next;
}

void to_json(Json& j, const CandidateRecord& r) {
  j = Json{{"genotype", r.genotype},
           {"summary", r.summary},
           {"vector", r.vector},
           {"pareto_rank", r.pareto_rank},
           {"iteration", r.iteration},
           {"index", r.index},
           {"genotype_hash", r.genotype_hash},
           {"parent_hash", r.parent_hash},
           {"run_dir", r.run_dir.generic_string()}};
}

void from_json(const Json& j, CandidateRecord& r) {
  r.genotype = j.at("genotype").get<MemoryGenotype>();
  r.summary = j.at("summary").get<FeedbackSummary>();
  r.vector = j.at("vector").get<SummaryVector>();
  r.pareto_rank = j.at("pareto_rank").get<int>();
  r.iteration = j.at("iteration").get<int>();
  r.index = j.at("index").get<int>();
  r.genotype_hash = j.at("genotype_hash").get<std::string>();
  r.parent_hash = j.at("parent_hash").get<std::string>();
  r.run_dir = j.at("run_dir").get<std::string>();
}

void to_json(Json& j, const EvolutionState& s) {
  Json history = Json::array();
  for (const auto& it : s.history) {
    history.push_back(Json{{"iteration", it.iteration},
                           {"candidates", it.candidates},
                           {"selected", it.selected},
                           {"batch_task_ids", it.batch_task_ids}});
  }
  Json previous(nullptr);
  if (s.previous_batch) {
    previous = Json{{"iteration", s.previous_batch->iteration},
                    {"new", task_ids(s.previous_batch->new_tasks)},
                    {"reused", task_ids(s.previous_batch->reused_tasks)}};
  }
  j = Json{{"k", s.k},
           {"config", s.config},
           {"candidates", s.candidates},
           {"candidate_parents", s.candidate_parents},
           {"history", history},
           {"previous_batch", previous}};
}

EvolutionState state_from_json(const Json& j, const std::vector<TaskSpec>& pool) {
  EvolutionState s;
  s.k = j.at("k").get<int>();
  s.config = j.at("config").get<EvolutionConfig>();
  s.candidates = j.at("candidates").get<std::vector<MemoryGenotype>>();
  s.candidate_parents = j.at("candidate_parents").get<std::vector<std::string>>();
  for (const auto& h : j.at("history")) {
    IterationRecord it;
    it.iteration = h.at("iteration").get<int>();
    it.candidates = h.at("candidates").get<std::vector<CandidateRecord>>();
    it.selected = h.at("selected").get<std::vector<std::string>>();
    it.batch_task_ids = h.at("batch_task_ids").get<std::vector<std::string>>();
    s.history.push_back(std::move(it));
  }
  const auto& prev = j.at("previous_batch");
  if (!prev.is_null()) {
    TaskBatch b;
    b.iteration = prev.at("iteration").get<int>();
    b.new_tasks = tasks_by_id(prev.at("new").get<std::vector<std::string>>(), pool);
    b.reused_tasks = tasks_by_id(prev.at("reused").get<std::vector<std::string>>(), pool);
    s.previous_batch = std::move(b);
  }
  return s;
}

std::vector<Json> lineage_records(const EvolutionState& state) {
  std::vector<Json> out;
  for (const auto& it : state.history) {
    for (const auto& c : it.candidates) {
      const bool selected =
          std::find(it.selected.begin(), it.selected.end(), c.genotype_hash) != it.selected.end();
      out.push_back(Json{{"iteration", it.iteration},
                         {"candidate", c.index},
                         {"name", c.genotype.name},
                         {"genotype_hash", c.genotype_hash},
                         {"parent_hash", c.parent_hash.empty() ? Json(nullptr) : Json(c.parent_hash)},
                         {"lineage", c.genotype.lineage},
                         {"summary", Json{{"perf_mean", c.summary.perf_mean},
                                          {"cost_mean", c.summary.cost_mean},
                                          {"delay_mean", c.summary.delay_mean},
                                          {"n", c.summary.n}}},
                         {"rank", c.pareto_rank},
                         {"selected", selected}});
    }
  }
  return out;
}

EvolutionState resume_or_start(const EvolutionConfig& config, const MemoryGenotype& initial,
                               const std::vector<TaskSpec>& pool,
                               const std::filesystem::path& out_dir) {
  const auto state_path = out_dir.empty() ? std::filesystem::path() : out_dir / "state.json";
  if (state_path.empty() || !std::filesystem::exists(state_path)) {
    return initial_state(config, initial);
  }
  EvolutionState saved = state_from_json(read_json_file(state_path), pool);
  if (!(saved.config == config)) {
    throw ValidationError(state_path.string() +
                          ": existing run was started with a different configuration");
  }
  return saved;
}

EvolutionResult run_evolution(const EvolutionConfig& config, const MemoryGenotype& initial,
                              const std::vector<TaskSpec>& pool,
                              std::shared_ptr<CompletionBackend> backend,
                              const std::filesystem::path& out_dir) {
  EvolutionState state = resume_or_start(config, initial, pool, out_dir);
  const auto state_path = out_dir.empty() ? std::filesystem::path() : out_dir / "state.json";
  Gateway meta(backend, config.prices);
  EvolutionContext ctx{&pool, backend, out_dir, &meta};
  while (!state.finished()) {
    state = evolve_iteration(state, ctx);
    if (!out_dir.empty()) {
      Json j;
      to_json(j, state);
      j["meta_usage"] = meta.usage_ledger();
      write_json_file(state_path, j);
      write_jsonl(out_dir / "evolution.jsonl", lineage_records(state));
    }
  }
  EvolutionResult result{state, select_parents(state.history.back().candidates, 1).front()};
  if (!out_dir.empty()) {
    save_genotype(out_dir / "champion.genotype.json", result.champion.genotype);
  }
  return result;
}

}  // namespace evolab
