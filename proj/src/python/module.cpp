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

// Python bindings. Structured values cross the boundary as JSON text; the
// evolab package converts them to and from plain dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "evolab/core/errors.h"
#include "evolab/embed/embedding.h"
#include "evolab/eval/metrics.h"
#include "evolab/eval/report.h"
#include "evolab/eval/scoring.h"
#include "evolab/genotype/mutate.h"
#include "evolab/genotype/presets.h"
#include "evolab/inner/episode.h"
#include "evolab/meta/evolution.h"
#include "evolab/meta/pareto.h"

namespace py = pybind11;
using namespace evolab;

namespace {

MemoryGenotype parse_genotype(const std::string& text) { return deserialize(text); }

std::string summary_text(const FeedbackSummary& s) {
  Json j;
  to_json(j, s);
  return j.dump();
}

std::string tasks_text(const std::vector<TaskSpec>& tasks) {
  Json j = Json::array();
  for (const auto& t : tasks) {
    Json one;
    to_json(one, t);
    j.push_back(std::move(one));
  }
  return j.dump();
}

std::vector<TaskSpec> tasks_from_text(const std::string& text) {
  std::vector<TaskSpec> out;
  for (const auto& j : Json::parse(text)) {
    TaskSpec t;
    from_json(j, t);
    check_task(t);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_evolab, m) {
  m.doc() = "evolab core bindings";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<InitializationError>(m, "InitializationError", base.ptr());
  py::register_exception<GatewayError>(m, "GatewayError", base.ptr());

  m.def("preset_names", &preset_names);
  m.def("preset", [](const std::string& name) { return serialize(preset(name)); });
  m.def("validate", [](const std::string& text) { return validate(parse_genotype(text)); });
  m.def("architecture_hash",
        [](const std::string& text) { return architecture_hash(parse_genotype(text)); });
  m.def("mutate", [](const std::string& text, uint64_t seed, int index) {
    return serialize(mutate(parse_genotype(text), seed, index));
  });

  m.def("embed", [](const std::string& text) { return HashingEmbedder().embed(text).values; });

  m.def("score_exact", [](const std::string& p, const std::string& g) { return score_exact(p, g); });
  m.def("normalize_answer", [](const std::string& t) { return normalize_answer(t); });
  m.def("pass_at_k",
        [](const std::vector<std::tuple<std::string, int, bool>>& rows, int k) {
          std::vector<EpisodeOutcome> outcomes;
          for (const auto& [task, attempt, success] : rows) {
            outcomes.push_back({task, attempt, success, {}});
          }
          return pass_at_k(outcomes, k);
        },
        py::arg("outcomes"), py::arg("k"));
  m.def("cumulative_accuracy", &cumulative_accuracy);

  m.def("pareto_rank", [](const std::vector<std::array<double, 3>>& v) {
    return pareto_rank(std::vector<SummaryVector>(v.begin(), v.end()));
  });
  m.def("dominates", [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return dominates(a, b);
  });

  m.def("generate_tasks",
        [](int families, int tasks_per_family, int keys_per_family, int max_steps,
           uint64_t seed) {
          return tasks_text(generate_tasks(
              TaskGenConfig{families, tasks_per_family, keys_per_family, max_steps, seed}));
        },
        py::arg("families") = 24, py::arg("tasks_per_family") = 10,
        py::arg("keys_per_family") = 8, py::arg("max_steps") = 6, py::arg("seed") = 7);

  m.def("run_batch",
        [](const std::string& genotype, const std::string& tasks, const std::string& mode,
           uint64_t seed, int attempts, const std::filesystem::path& out_dir) {
          const MemoryGenotype g = parse_genotype(genotype);
          const auto specs = tasks_from_text(tasks);
          BatchOptions options;
          options.mode = parse_run_mode(mode);
          options.seed = seed;
          options.attempts = attempts;
          options.out_dir = out_dir;
          options.summary_extra = Json{{"name", g.name},
                                       {"genotype_hash", architecture_hash(g)},
                                       {"lineage", g.lineage}};
          py::gil_scoped_release release;
          auto gateway = std::make_shared<Gateway>(make_backend_from_env());
          return summary_text(run_batch(g, specs, gateway, options).summary);
        },
        py::arg("genotype"), py::arg("tasks"), py::arg("mode") = "online", py::arg("seed") = 0,
        py::arg("attempts") = 1, py::arg("out_dir") = std::filesystem::path());

  m.def("evolve",
        [](const std::string& config_text, const std::string& tasks,
           const std::filesystem::path& out_dir) {
          const EvolutionConfig config = Json::parse(config_text).get<EvolutionConfig>();
          const MemoryGenotype initial = resolve_initial(config.initial, {});
          const auto pool = tasks_from_text(tasks);
          py::gil_scoped_release release;
          const auto r = run_evolution(config, initial, pool, make_backend_from_env(), out_dir);
          Json champion;
          to_json(champion, r.champion);
          return Json{{"candidates", r.state.candidates_evaluated()},
                      {"episodes", r.state.episodes_run()},
                      {"champion", champion}}
              .dump();
        },
        py::arg("config"), py::arg("tasks"), py::arg("out_dir"));

  m.def("write_report", &write_report, py::arg("run_dir"), py::arg("out_dir"));
}
