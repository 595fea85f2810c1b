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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every LLM call goes through the backend named by the
// environment, which must resolve to the strict stub.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "evolab/core/jsonl.h"
#include "evolab/core/random.h"
#include "evolab/embed/embedding.h"
#include "evolab/embed/store_backend.h"
#include "evolab/eval/metrics.h"
#include "evolab/genotype/modular_provider.h"
#include "evolab/genotype/mutate.h"
#include "evolab/genotype/presets.h"
#include "evolab/inner/episode.h"
#include "evolab/inner/feedback.h"
#include "evolab/meta/evolution.h"
#include "evolab/meta/pareto.h"
#include "oracles.h"
#include "test_support.h"

namespace {

using namespace evolab;
namespace fs = std::filesystem;

// A failed check explains itself; success is an empty optional.
using Outcome = std::optional<std::string>;

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;  // 0 = no limit
  std::function<Outcome()> check;
};

#define REQUIRE(cond, msg)                  \
  do {                                      \
    if (!(cond)) {                          \
      std::ostringstream os_;               \
      os_ << msg;                           \
      return os_.str();                     \
    }                                       \
  } while (0)

std::shared_ptr<CompletionBackend> env_backend() { return make_backend_from_env(); }

Outcome pareto_oracle() {
  Rng rng(20250101);
  for (int instance = 0; instance < 200; ++instance) {
    const std::size_t n = 1 + rng.below(20);
    std::vector<SummaryVector> v(n);
    std::vector<oracle::Vec3> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (int c = 0; c < 3; ++c) w[i][c] = v[i][c] = rng.unit();
    }
    REQUIRE(pareto_rank(v) == oracle::pareto_rank(w), "rank mismatch on instance " << instance);
  }
  return std::nullopt;
}

FeedbackSummary triple(double perf, double cost, double delay) {
  FeedbackSummary s;
  s.perf_mean = perf;
  s.cost_mean = cost;
  s.delay_mean = delay;
  s.n = 1;
  return s;
}

Outcome reference_triples() {
  const auto voyager = triple(69.70, 0.060, 499.89);
  const auto no_memory = triple(69.09, 0.086, 505.46);
  const auto evolved = triple(73.33, 0.085, 693.33);
  REQUIRE(dominates(summary_vector(voyager), summary_vector(no_memory)),
          "Voyager should dominate No-Memory");
  REQUIRE(!dominates(summary_vector(evolved), summary_vector(no_memory)) &&
              !dominates(summary_vector(no_memory), summary_vector(evolved)),
          "the evolved row and No-Memory should be mutually non-dominated");
  std::vector<CandidateRecord> records;
  for (const auto& [name, s] : std::vector<std::pair<std::string, FeedbackSummary>>{
           {"voyager", voyager}, {"no_memory", no_memory}, {"evolved", evolved}}) {
    MemoryGenotype g = preset("dilu");
    g.name = name;
    g.retrieve.k = static_cast<int>(records.size()) + 1;
    records.push_back(make_record(g, s, 0, static_cast<int>(records.size())));
  }
  assign_ranks(records);
  const auto chosen = select_parents(records, 1);
  REQUIRE(chosen.size() == 1 && chosen[0].genotype.name == "evolved",
          "select_parents(K=1) returned " << (chosen.empty() ? "nothing" : chosen[0].genotype.name));
  return std::nullopt;
}

Outcome candidate_count(const fs::path& scratch) {
  const EvolutionConfig config;
  REQUIRE(config.K_max == 3 && config.K == 1 && config.S == 3 && !config.elitism &&
              config.n_new == 40 && config.n_reused == 20,
          "default configuration drifted");
  const auto r = run_evolution(config, resolve_initial(config.initial, {}),
                               generate_tasks(TaskGenConfig{}), env_backend(), scratch / "law");
  REQUIRE(r.state.candidates_evaluated() == 7, r.state.candidates_evaluated() << " candidates");
  REQUIRE(r.state.episodes_run() == 420, r.state.episodes_run() << " episodes");
  for (const auto& it : r.state.history) {
    for (const auto& c : it.candidates) {
      REQUIRE(c.summary.n == 60, "candidate " << c.genotype.name << " ran " << c.summary.n);
    }
  }
  return std::nullopt;
}

Outcome cli_determinism(const fs::path& scratch) {
#ifdef EVOLAB_CLI
  save_tasks(scratch / "tasks.jsonl", generate_tasks(TaskGenConfig{}));
  write_text_file(scratch / "evolve.json", "{\"seed\": 7}\n");
  std::string first;
  for (const char* out : {"evo-a", "evo-b"}) {
    const auto r = testing::run_command(
        EVOLAB_CLI,
        {"evolve", "--config", (scratch / "evolve.json").string(), "--tasks",
         (scratch / "tasks.jsonl").string(), "--out", (scratch / out).string()},
        scratch);
    REQUIRE(r.exit_code == 0, "evolab evolve exited " << r.exit_code << ": " << r.output);
    const std::string text = read_text_file(scratch / out / "evolution.jsonl");
    REQUIRE(!text.empty(), "empty evolution.jsonl");
    if (first.empty()) {
      first = text;
    } else {
      REQUIRE(text == first, "evolution.jsonl differs between runs");
    }
  }
  return std::nullopt;
#else
  (void)scratch;
  return std::string("built without the evolab CLI");
#endif
}

Outcome memory_benefit() {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const auto tasks = testing::exposure_stream(seed);
    BatchOptions options;
    options.seed = seed;
    const auto with = testing::exposure_delays(
        run_batch(preset("dilu"), tasks, std::make_shared<Gateway>(env_backend()), options));
    NullProvider none;
    Gateway gateway(env_backend());
    const auto without = testing::exposure_delays(run_batch_with(none, tasks, gateway, options));
    REQUIRE(with.second < with.first, "seed " << seed << ": dilu second-exposure delay "
                                              << with.second << " vs first " << with.first);
    REQUIRE(without.second >= without.first, "seed " << seed << ": no-memory improved from "
                                                     << without.first << " to " << without.second);
  }
  return std::nullopt;
}

Outcome genotype_closure() {
  Rng rng(77);
  for (const auto& name : preset_names()) {
    for (int chain = 0; chain < 500; ++chain) {
      MemoryGenotype g = preset(name);
      for (int step = 0; step < 10; ++step) {
        g = mutate(g, rng.next(), step);
        const auto violations = validate(g);
        REQUIRE(violations.empty(), name << " chain " << chain << ": " << violations.front());
        instantiate(g);
      }
    }
  }
  return std::nullopt;
}

std::string random_text(Rng& rng) {
  static const std::vector<std::string> words{"paris", "capital", "lookup", "registry", "code",
                                              "france", "river", "kestrel", "alpine", "42"};
  std::string out;
  for (std::size_t n = 1 + rng.below(6); n > 0; --n) {
    if (!out.empty()) out += ' ';
    out += words[rng.below(words.size())];
  }
  return out;
}

Outcome retrieval_oracle() {
  const auto embedder = std::make_shared<const HashingEmbedder>();
  Rng rng(4242);
  for (int instance = 0; instance < 200; ++instance) {
    StoreBackend store(instance % 2 ? BackendKind::kAppendLog : BackendKind::kVectorIndex, embedder);
    std::vector<oracle::Scored> all;
    const auto query = embedder->embed(random_text(rng));
    const std::size_t n = rng.below(101);
    for (std::size_t i = 0; i < n; ++i) {
      MemoryItem m;
      m.id = "m" + std::to_string(rng.below(500)) + "-" + std::to_string(i);
      m.content = random_text(rng);
      m.created_at_step = static_cast<int64_t>(rng.below(4));
      store.upsert(m);
      all.push_back({m.id, m.created_at_step, cosine(query, embedder->embed(m.content))});
    }
    std::vector<std::string> previous;
    for (std::size_t k = 0; k <= n + 1; ++k) {
      const auto got = store.top_k(query, static_cast<int>(k));
      const auto want = oracle::top_k(all, k);
      REQUIRE(got.size() == want.size(), "instance " << instance << " k " << k << ": size");
      std::vector<std::string> ids;
      for (std::size_t i = 0; i < got.size(); ++i) {
        REQUIRE(got[i].item.id == want[i].id, "instance " << instance << " k " << k << ": order");
        ids.push_back(got[i].item.id);
      }
      REQUIRE(std::equal(previous.begin(), previous.end(), ids.begin()),
              "instance " << instance << " k " << k << ": prefix property");
      previous = ids;
    }
  }
  return std::nullopt;
}

Outcome metric_oracles() {
  Rng rng(808);
  for (int instance = 0; instance < 100; ++instance) {
    std::vector<std::vector<bool>> matrix(1 + rng.below(100), std::vector<bool>(3));
    std::vector<EpisodeOutcome> outcomes;
    const double p = rng.unit();
    for (std::size_t t = 0; t < matrix.size(); ++t) {
      for (int a = 0; a < 3; ++a) {
        matrix[t][a] = rng.unit() < p;
        outcomes.push_back({"t" + std::to_string(t), a + 1, matrix[t][a], {}});
      }
    }
    rng.shuffle(outcomes);
    double previous = 0.0;
    for (int k = 1; k <= 3; ++k) {
      const double got = pass_at_k(outcomes, k);
      REQUIRE(got == oracle::pass_at_k(matrix, k), "pass@" << k << " instance " << instance);
      REQUIRE(got >= previous, "pass@k decreased at k=" << k << " instance " << instance);
      previous = got;
    }
    std::vector<bool> seq(1 + rng.below(300));
    for (std::size_t i = 0; i < seq.size(); ++i) seq[i] = rng.unit() < p;
    const auto got = cumulative_accuracy(seq);
    const auto want = oracle::prefix_means(seq);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      REQUIRE(std::abs(got[i] - want[i]) <= 1e-12, "cumulative accuracy at " << i);
    }
  }
  return std::nullopt;
}

Outcome aggregation() {
  Rng rng(99);
  const auto pool = generate_tasks(TaskGenConfig{});
  const auto names = preset_names();
  for (int batch = 0; batch < 100; ++batch) {
    const int n_new = 1 + static_cast<int>(rng.below(30));
    const auto tasks = compose_batch(pool, nullptr, n_new, 0, rng.next(), batch).ordered();
    auto gateway = std::make_shared<Gateway>(env_backend(), PriceTable{rng.unit(), rng.unit() * 4});
    BatchOptions options;
    options.seed = rng.next();
    const auto& name = names[rng.below(names.size())];
    const auto r = run_batch(preset(name), tasks, gateway, options);
    std::vector<double> perf;
    std::vector<double> cost;
    std::vector<double> delay;
    for (const auto& e : r.episodes) {
      perf.push_back(e.feedback.perf);
      cost.push_back(e.feedback.cost);
      delay.push_back(e.feedback.delay);
    }
    REQUIRE(std::abs(r.summary.perf_mean - oracle::mean(perf)) <= 1e-9, "perf, batch " << batch);
    REQUIRE(std::abs(r.summary.cost_mean - oracle::mean(cost)) <= 1e-9, "cost, batch " << batch);
    REQUIRE(std::abs(r.summary.delay_mean - oracle::mean(delay)) <= 1e-9,
            "delay, batch " << batch);
    const double ledger = gateway->total_cost_units() / static_cast<double>(r.episodes.size());
    REQUIRE(std::abs(r.summary.cost_mean - ledger) <= 1e-9,
            "batch " << batch << " (" << name << "): cost_mean " << r.summary.cost_mean
                     << " vs ledger " << ledger);
  }
  return std::nullopt;
}

// Any attempt to reach the network would hit these closed endpoints.
void cut_network() {
  for (const char* var : {"http_proxy", "https_proxy", "HTTP_PROXY", "HTTPS_PROXY", "ALL_PROXY"}) {
    setenv(var, "http://127.0.0.1:9", 1);
  }
  setenv("EVOLAB_LLM_BASE_URL", "http://127.0.0.1:9", 1);
  setenv("EVOLAB_LLM_API_KEY", "", 1);
  setenv("EVOLAB_LLM_MODE", "stub-strict", 0);
}

}  // namespace

int main() {
  cut_network();
  testing::TempDir scratch("acceptance");
  std::vector<Criterion> criteria{
      {1, "pareto ranks match the dominance oracle", 5, pareto_oracle},
      {2, "reference triples: dominance and selection", 0, reference_triples},
      {3, "default config: 7 candidates, 420 episodes", 60,
       [&] { return candidate_count(scratch.path()); }},
      {4, "evolab evolve twice gives identical evolution.jsonl", 120,
       [&] { return cli_determinism(scratch.path()); }},
      {5, "memory shortens second exposures on 10 seeds", 30, memory_benefit},
      {6, "mutate chains validate and instantiate", 10, genotype_closure},
      {7, "top_k matches the full-sort oracle", 5, retrieval_oracle},
      {8, "pass@k and cumulative accuracy oracles", 5, metric_oracles},
      {9, "aggregation and ledger reconciliation", 0, aggregation},
  };

  bool all_ok = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome failure;
    try {
      failure = c.check();
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!failure && c.limit_seconds > 0 && seconds > c.limit_seconds) {
      failure = "took " + std::to_string(seconds) + " s, limit " +
                std::to_string(static_cast<int>(c.limit_seconds)) + " s";
    }
    all_ok = all_ok && !failure;
    std::printf("criterion %2d: %s  %-52s %7.3f s%s%s\n", c.id, failure ? "FAIL" : "PASS",
                c.title.c_str(), seconds, failure ? "  " : "", failure ? failure->c_str() : "");
    std::fflush(stdout);
  }

  // Criterion 10 holds when everything above ran against the strict stub.
  std::string mode;
  try {
    mode = std::string(env_backend()->mode());
  } catch (const std::exception& e) {
    mode = e.what();
  }
  const bool offline = mode == "stub-strict";
  std::printf("criterion 10: %s  %-52s %7.3f s%s\n", offline && all_ok ? "PASS" : "FAIL",
              "criteria 1-9 offline under stub-strict", 0.0,
              offline ? (all_ok ? "" : "  an earlier criterion failed")
                      : ("  backend mode is " + mode).c_str());
  return offline && all_ok ? 0 : 1;
}
