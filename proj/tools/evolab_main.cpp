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

// evolab command-line entry point.
//
// Exit codes: 0 success, 1 usage error (bad flags, invalid inputs),
// 2 runtime failure (partial results stay on disk).

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>

#include "evolab/core/errors.h"
#include "evolab/eval/report.h"
#include "evolab/genotype/presets.h"
#include "evolab/inner/episode.h"
#include "evolab/inner/task.h"
#include "evolab/meta/evolution.h"

namespace {

using namespace evolab;

constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

// Input problems detected before any work starts.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::shared_ptr<CompletionBackend> backend() {
  try {
    return make_backend_from_env();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

AgentFactory agent_factory(uint64_t seed) {
  const char* kind = std::getenv("EVOLAB_AGENT");
  const std::string name = kind && *kind ? kind : "sim";
  if (name == "sim") return [seed] { return std::make_unique<SimAgent>(seed); };
  if (name == "llm") return [] { return std::make_unique<GatewayAgent>(); };
  throw UsageError("EVOLAB_AGENT must be sim or llm, got '" + name + "'");
}

template <typename F>
auto as_usage(F&& f) {
  try {
    return f();
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  } catch (const InitializationError& e) {
    throw UsageError(e.what());
  }
}

int presets_list() {
  for (const auto& info : preset_registry()) {
    std::cout << info.name << "\t" << info.row << "\t" << info.system << "\n";
  }
  return 0;
}

int presets_show(const std::string& name) {
  const MemoryGenotype g = as_usage([&] { return preset(name); });
  std::cout << serialize(g) << "\n";
  return 0;
}

int genotype_validate(const std::string& path) {
  MemoryGenotype g;
  try {
    g = load_genotype(path);
  } catch (const Error& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return kUsageError;
  }
  const auto violations = validate(g);
  if (violations.empty()) {
    std::cout << path << ": valid (" << g.name << ", " << architecture_hash(g) << ")\n";
    return 0;
  }
  std::cerr << path << ": invalid genotype '" << g.name << "'\n";
  for (const auto& v : violations) std::cerr << "  - " << v << "\n";
  return kUsageError;
}

struct RunArgs {
  std::string genotype;
  std::string tasks;
  std::string mode = "online";
  uint64_t seed = 0;
  std::string out;
  int attempts = 1;
};

int run(const RunArgs& a) {
  const MemoryGenotype genotype = as_usage([&] {
    MemoryGenotype g = load_genotype(a.genotype);
    if (const auto v = validate(g); !v.empty()) {
      throw ValidationError("invalid genotype '" + g.name + "': " + v.front());
    }
    return g;
  });
  const auto tasks = as_usage([&] { return load_tasks(a.tasks); });
  BatchOptions options;
  options.mode = as_usage([&] { return parse_run_mode(a.mode); });
  options.seed = a.seed;
  options.attempts = a.attempts;
  options.out_dir = a.out;
  options.agent_factory = agent_factory(a.seed);
  options.summary_extra = Json{{"name", genotype.name},
                               {"genotype_hash", architecture_hash(genotype)},
                               {"lineage", genotype.lineage}};
  auto gateway = std::make_shared<Gateway>(backend());
  const BatchResult r = run_batch(genotype, tasks, gateway, options);
  std::printf("%s: %zu episodes, perf %.4f, cost %.4f, delay %.4f -> %s\n",
              genotype.name.c_str(), r.summary.n, r.summary.perf_mean, r.summary.cost_mean,
              r.summary.delay_mean, a.out.c_str());
  return 0;
}

int evolve(const std::string& config_path, const std::string& tasks_path, const std::string& out) {
  const EvolutionConfig config = as_usage([&] { return load_evolution_config(config_path); });
  const MemoryGenotype initial = as_usage([&] {
    return resolve_initial(config.initial, std::filesystem::path(config_path).parent_path());
  });
  const auto pool = as_usage([&] { return load_tasks(tasks_path); });
  as_usage([&] { return resume_or_start(config, initial, pool, out); });
  const EvolutionResult r = run_evolution(config, initial, pool, backend(), out);
  std::printf("%zu candidates, %zu episodes; champion %s (perf %.4f, cost %.4f, delay %.4f)\n",
              r.state.candidates_evaluated(), r.state.episodes_run(),
              r.champion.genotype.name.c_str(), r.champion.summary.perf_mean,
              r.champion.summary.cost_mean, r.champion.summary.delay_mean);
  return 0;
}

int eval(const std::string& run_dir, const std::string& protocol_name, int passk) {
  const Protocol protocol = as_usage([&] { return parse_protocol(protocol_name); });
  std::unique_ptr<Gateway> judge;
  if (protocol == Protocol::kJudge) judge = std::make_unique<Gateway>(backend());
  const auto evaluations =
      as_usage([&] { return evaluate_run(run_dir, protocol, passk, judge.get()); });
  const Json result = evaluation_json(evaluations, protocol, passk);
  write_json_file(std::filesystem::path(run_dir) / ("eval." + std::string(to_string(protocol)) + ".json"),
                  result);
  std::cout << result.dump(2) << "\n";
  return 0;
}

int report(const std::string& run_dir, const std::string& out) {
  as_usage([&] {
    write_report(run_dir, out);
    return 0;
  });
  std::cout << "report written to " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evolab: self-evolving agent memory architectures"};
  app.require_subcommand(1);

  auto* presets = app.add_subcommand("presets", "Built-in memory genotypes");
  presets->require_subcommand(1);
  auto* presets_list_cmd = presets->add_subcommand("list", "List preset names");
  std::string preset_name;
  auto* presets_show_cmd = presets->add_subcommand("show", "Print a preset genotype");
  presets_show_cmd->add_option("name", preset_name)->required();

  auto* genotype = app.add_subcommand("genotype", "Genotype files");
  genotype->require_subcommand(1);
  std::string genotype_file;
  auto* validate_cmd = genotype->add_subcommand("validate", "Check a genotype file");
  validate_cmd->add_option("file", genotype_file)->required();

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Run one genotype over a task batch");
  run_cmd->add_option("--genotype", run_args.genotype)->required();
  run_cmd->add_option("--tasks", run_args.tasks)->required();
  run_cmd->add_option("--mode", run_args.mode)->check(CLI::IsMember({"online", "offline"}));
  run_cmd->add_option("--seed", run_args.seed);
  run_cmd->add_option("--out", run_args.out)->required();
  run_cmd->add_option("--attempts", run_args.attempts, "Consecutive attempts per task")
      ->check(CLI::PositiveNumber);

  std::string config_path, tasks_path, out_dir;
  auto* evolve_cmd = app.add_subcommand("evolve", "Run architecture evolution");
  evolve_cmd->add_option("--config", config_path)->required();
  evolve_cmd->add_option("--tasks", tasks_path)->required();
  evolve_cmd->add_option("--out", out_dir)->required();

  std::string run_dir, protocol = "exact";
  int passk = 1;
  auto* eval_cmd = app.add_subcommand("eval", "Rescore a run");
  eval_cmd->add_option("--run", run_dir)->required();
  eval_cmd->add_option("--protocol", protocol)->check(CLI::IsMember({"exact", "judge"}));
  eval_cmd->add_option("--passk", passk)->check(CLI::PositiveNumber);

  std::string report_out;
  auto* report_cmd = app.add_subcommand("report", "Write tables and CSV series for a run");
  report_cmd->add_option("--run", run_dir)->required();
  report_cmd->add_option("--out", report_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (presets_list_cmd->parsed()) return presets_list();
    if (presets_show_cmd->parsed()) return presets_show(preset_name);
    if (validate_cmd->parsed()) return genotype_validate(genotype_file);
    if (run_cmd->parsed()) return run(run_args);
    if (evolve_cmd->parsed()) return evolve(config_path, tasks_path, out_dir);
    if (eval_cmd->parsed()) return eval(run_dir, protocol, passk);
    if (report_cmd->parsed()) return report(run_dir, report_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}
