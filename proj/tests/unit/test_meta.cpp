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

#include <gtest/gtest.h>

#include <set>

#include "evolab/core/errors.h"
#include "evolab/core/random.h"
#include "evolab/genotype/presets.h"
#include "evolab/meta/design.h"
#include "evolab/meta/diagnose.h"
#include "evolab/meta/evolution.h"
#include "evolab/meta/pareto.h"
#include "oracles.h"
#include "test_support.h"

namespace evolab {
namespace {

FeedbackSummary summary(double perf, double cost, double delay) {
  FeedbackSummary s;
  s.perf_mean = perf;
  s.cost_mean = cost;
  s.delay_mean = delay;
  s.n = 1;
  return s;
}

CandidateRecord named(const std::string& name, double perf, double cost, double delay) {
  MemoryGenotype g = preset("dilu");
  g.name = name;
  g.retrieve.k = 1 + static_cast<int>(name.size() % 5);
  return make_record(g, summary(perf, cost, delay), 0, 0);
}

// -- summary vectors and ranks ---------------------------------------------

TEST(Pareto, SummaryVectorSigns) {
  EXPECT_EQ(summary_vector(summary(0.7, 0.1, 500)), (SummaryVector{0.7, -0.1, -500}));
  EXPECT_EQ(summary_vector(summary(69.09, 0.086, 505.46)), (SummaryVector{69.09, -0.086, -505.46}));
  const auto zero = summary_vector(summary(0, 0, 0));
  EXPECT_EQ(zero, (SummaryVector{0, 0, 0}));
  EXPECT_FALSE(std::signbit(zero[1]));
}

TEST(Pareto, SingletonAndEmpty) {
  EXPECT_EQ(pareto_rank({{1, 2, 3}}), std::vector<int>{0});
  EXPECT_THROW(pareto_rank({}), ValidationError);
  EXPECT_THROW(pareto_rank({{std::nan(""), 0, 0}}), ValidationError);
}

TEST(Pareto, ReferenceTriples) {
  const SummaryVector voyager = summary_vector(summary(69.70, 0.060, 499.89));
  const SummaryVector no_memory = summary_vector(summary(69.09, 0.086, 505.46));
  const SummaryVector evolved = summary_vector(summary(73.33, 0.085, 693.33));
  EXPECT_TRUE(dominates(voyager, no_memory));
  EXPECT_EQ(pareto_rank({voyager, no_memory}), (std::vector<int>{0, 1}));
  EXPECT_FALSE(dominates(evolved, no_memory));
  EXPECT_FALSE(dominates(no_memory, evolved));
  EXPECT_EQ(pareto_rank({evolved, no_memory}), (std::vector<int>{0, 0}));
}

TEST(Pareto, MatchesBruteForceOracle) {
  Rng rng(1);
  for (int instance = 0; instance < 200; ++instance) {
    const std::size_t n = 1 + rng.below(20);
    std::vector<SummaryVector> v;
    std::vector<oracle::Vec3> w;
    for (std::size_t i = 0; i < n; ++i) {
      SummaryVector x;
      // Coarse grid in some instances to force ties and duplicates.
      for (auto& c : x) c = instance % 3 == 0 ? static_cast<double>(rng.below(3)) / 2.0 : rng.unit();
      v.push_back(x);
      w.push_back({x[0], x[1], x[2]});
    }
    const auto ranks = pareto_rank(v);
    ASSERT_EQ(ranks, oracle::pareto_rank(w)) << "instance " << instance;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (ranks[a] < ranks[b]) ASSERT_FALSE(dominates(v[b], v[a]));
        if (ranks[a] == 0) ASSERT_FALSE(oracle::dominates(w[b], w[a]));
      }
    }
  }
}

// -- selection ----------------------------------------------------------------

TEST(Selection, ReferenceTriplesPickEvolved) {
  std::vector<CandidateRecord> c{named("voyager", 69.70, 0.060, 499.89),
                                 named("no_memory", 69.09, 0.086, 505.46),
                                 named("evolved", 73.33, 0.085, 693.33)};
  assign_ranks(c);
  EXPECT_EQ(c[0].pareto_rank, 0);
  EXPECT_EQ(c[1].pareto_rank, 1);
  EXPECT_EQ(c[2].pareto_rank, 0);
  const auto chosen = select_parents(c, 1);
  ASSERT_EQ(chosen.size(), 1u);
  EXPECT_EQ(chosen[0].genotype.name, "evolved");
}

TEST(Selection, FullTieGoesByName) {
  std::vector<CandidateRecord> c{named("c", 0.5, 1, 1), named("a", 0.5, 1, 1), named("b", 0.5, 1, 1)};
  assign_ranks(c);
  const auto chosen = select_parents(c, 2);
  EXPECT_EQ(chosen[0].genotype.name, "a");
  EXPECT_EQ(chosen[1].genotype.name, "b");
}

TEST(Selection, OversizedBudgetReturnsAllOrdered) {
  std::vector<CandidateRecord> c{named("x", 0.1, 1, 1), named("y", 0.9, 1, 1), named("z", 0.5, 9, 9)};
  assign_ranks(c);
  const auto chosen = select_parents(c, 10);
  ASSERT_EQ(chosen.size(), 3u);
  EXPECT_EQ(chosen[0].genotype.name, "y");
  EXPECT_THROW(select_parents(c, 0), ValidationError);
}

TEST(Selection, PermutationAndScaleInvariance) {
  Rng rng(8);
  for (int instance = 0; instance < 100; ++instance) {
    std::vector<CandidateRecord> c;
    const std::size_t n = 2 + rng.below(10);
    for (std::size_t i = 0; i < n; ++i) {
      c.push_back(named("g" + std::to_string(i), static_cast<double>(rng.below(4)) / 4.0,
                        rng.unit() * 100, rng.unit() * 10));
    }
    assign_ranks(c);
    const int K = 1 + static_cast<int>(rng.below(3));
    auto names = [](const std::vector<CandidateRecord>& v) {
      std::vector<std::string> out;
      for (const auto& r : v) out.push_back(r.genotype.name);
      return out;
    };
    const auto base = names(select_parents(c, K));
    auto shuffled = c;
    rng.shuffle(shuffled);
    ASSERT_EQ(names(select_parents(shuffled, K)), base);
    auto scaled = c;
    const double factor = 0.001 + rng.unit() * 50;
    for (auto& r : scaled) {
      r = make_record(r.genotype, summary(r.summary.perf_mean, r.summary.cost_mean * factor,
                                          r.summary.delay_mean * factor), 0, 0);
    }
    assign_ranks(scaled);
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(scaled[i].pareto_rank, c[i].pareto_rank);
    ASSERT_EQ(names(select_parents(scaled, K)), base);
  }
}

// -- diagnosis -----------------------------------------------------------------

EpisodeRecord episode(const std::string& task, const std::string& family, bool success) {
  EpisodeRecord e;
  e.trajectory.task_id = task;
  e.trajectory.family_id = family;
  e.trajectory.success = success;
  return e;
}

std::vector<MemoryItem> store_with_hits(int n, int hit) {
  std::vector<MemoryItem> out;
  for (int i = 0; i < n; ++i) {
    MemoryItem m;
    m.id = "m" + std::to_string(i);
    m.content = "x";
    m.hit_count = i < hit ? 1 : 0;
    out.push_back(m);
  }
  return out;
}

TEST(Diagnose, NoRetrieval) {
  const std::vector<EpisodeRecord> episodes{episode("t0", "f0", true)};
  const auto p = diagnose(episodes, store_with_hits(3, 0));
  EXPECT_EQ(p.retrieval_hit_rate, 0.0);
  EXPECT_EQ(p.dead_item_fraction, 1.0);
  EXPECT_EQ(diagnose(episodes, {}).dead_item_fraction, 0.0);
}

TEST(Diagnose, DeadFraction) {
  EXPECT_DOUBLE_EQ(diagnose({episode("t", "f", true)}, store_with_hits(10, 4)).dead_item_fraction, 0.6);
}

TEST(Diagnose, EveryHintUsed) {
  std::vector<EpisodeRecord> episodes;
  for (int i = 0; i < 4; ++i) {
    EpisodeRecord e = episode("t" + std::to_string(i), "f", true);
    TrajectoryStep s0;
    s0.index = 0;
    s0.memory_ids = {"a", "b"};
    s0.action = "lookup(k.a)";
    TrajectoryStep s1;
    s1.index = 1;
    s1.memory_ids = {"a", "b"};
    s1.action = "lookup(k.b)";
    e.trajectory.steps = {s0, s1};
    e.trajectory.provided_memory_ids = {"a", "b"};
    e.trajectory.provided_memory_keys = {"k.a", "k.b"};
    e.trajectory.total_tokens = 100;
    e.trajectory.steps[0].memory_tokens = 30;
    e.trajectory.steps[1].memory_tokens = 30;
    episodes.push_back(e);
  }
  const auto p = diagnose(episodes, store_with_hits(2, 2));
  EXPECT_EQ(p.retrieval_hit_rate, 1.0);
  EXPECT_DOUBLE_EQ(p.memory_token_overhead, 0.6);
  EXPECT_DOUBLE_EQ(p.store_growth, 0.5);
  EXPECT_TRUE(p.failure_families.empty());
}

TEST(Diagnose, FailureFamilies) {
  const std::vector<EpisodeRecord> e{episode("a", "f1", false), episode("b", "f1", false),
                                     episode("c", "f1", true), episode("d", "f2", true)};
  EXPECT_EQ(diagnose(e, {}).failure_families, std::vector<std::string>{"f1"});
}

TEST(Diagnose, NarrativeComesFromGateway) {
  Gateway gw(testing::strict_stub());
  const auto p = diagnose(preset("dilu"), summary(0.5, 1, 2), {episode("a", "f", true)}, {}, &gw);
  ASSERT_TRUE(p.narrative.has_value());
  EXPECT_NE(p.narrative->find("Retrieval hit rate 0.0000"), std::string::npos) << *p.narrative;
  Gateway empty(std::make_shared<StubBackend>(std::vector<StubFixture>{}, true));
  EXPECT_FALSE(diagnose(preset("dilu"), summary(0.5, 1, 2), {episode("a", "f", true)}, {}, &empty)
                   .narrative.has_value());
}

TEST(Diagnose, RunDirWithoutTrajectories) {
  testing::TempDir dir("diag");
  try {
    diagnose_run_dir(dir.path(), nullptr);
    FAIL();
  } catch (const InitializationError& e) {
    EXPECT_NE(std::string(e.what()).find(dir.path().string()), std::string::npos);
  }
}

// -- design ----------------------------------------------------------------------

std::size_t stages_changed(const MemoryGenotype& a, const MemoryGenotype& b) {
  return (a.encode != b.encode) + (a.store != b.store) + (a.retrieve != b.retrieve) +
         (a.manage != b.manage);
}

TEST(Design, ThreeDistinctValidDescendants) {
  const MemoryGenotype parent = preset("dilu");
  const auto kids = design(parent, DefectProfile{}, 3, Proposer::kDeterministic, 42);
  ASSERT_EQ(kids.size(), 3u);
  for (std::size_t i = 0; i < kids.size(); ++i) {
    EXPECT_TRUE(validate(kids[i]).empty());
    EXPECT_EQ(kids[i].name, "dilu." + std::to_string(i));
    EXPECT_EQ(kids[i].lineage, std::vector<std::string>{"dilu"});
    EXPECT_FALSE(same_architecture(kids[i], parent));
    // One mutated field, plus a possible coupled store/retrieve repair.
    const std::size_t changed = stages_changed(kids[i], parent);
    EXPECT_GE(changed, 1u);
    EXPECT_LE(changed, 2u);
    if (changed == 2) EXPECT_NE(kids[i].notes.back().find("repaired"), std::string::npos);
    for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(same_architecture(kids[i], kids[j]));
    EXPECT_NE(kids[i].notes.back().find("bias-v1"), std::string::npos);
  }
  EXPECT_EQ(kids, design(parent, DefectProfile{}, 3, Proposer::kDeterministic, 42));
}

TEST(Design, LlmFallbackAfterRepeatedInvalidReplies) {
  Gateway gw(std::make_shared<StubBackend>(
      std::vector<StubFixture>{{"design", "*", "I would add a graph database."}}, true));
  const auto kids = design(preset("dilu"), DefectProfile{}, 1, Proposer::kLlm, 3, &gw);
  ASSERT_EQ(kids.size(), 1u);
  EXPECT_TRUE(validate(kids[0]).empty());
  EXPECT_EQ(kids[0].lineage, std::vector<std::string>{"dilu"});
  EXPECT_NE(kids[0].notes.back().find("llm proposal fallback after 3 attempts"), std::string::npos);
  EXPECT_EQ(gw.usage_ledger().at("design").calls, 3);
}

TEST(Design, LlmProposalAccepted) {
  MemoryGenotype proposal = preset("dilu");
  proposal.retrieve.k = 5;
  Gateway gw(std::make_shared<StubBackend>(
      std::vector<StubFixture>{{"design", "*", "Here you go:\n" + serialize(proposal) + "\nDone."}},
      true));
  const auto kids = design(preset("dilu"), DefectProfile{}, 1, Proposer::kLlm, 3, &gw);
  ASSERT_EQ(kids.size(), 1u);
  EXPECT_EQ(kids[0].retrieve.k, 5);
  EXPECT_EQ(kids[0].name, "dilu.0");
  EXPECT_NE(kids[0].notes.back().find("llm proposal"), std::string::npos);
}

TEST(Design, ParseProposalReasons) {
  EXPECT_THROW(parse_proposal("no json here"), ValidationError);
  MemoryGenotype bad = preset("dilu");
  bad.retrieve.k = -1;
  EXPECT_THROW(parse_proposal(serialize(bad)), ValidationError);
}

TEST(Design, TokenOverheadTriggersContextReduction) {
  DefectProfile heavy;
  heavy.memory_token_overhead = 0.7;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    for (const auto& name : preset_names()) {
      const MemoryGenotype parent = preset(name);
      const auto kids = design(parent, heavy, 3, Proposer::kDeterministic, seed);
      bool reduced = false;
      for (const auto& k : kids) {
        reduced |= k.retrieve.k < parent.retrieve.k || k.encode.max_chars < parent.encode.max_chars;
      }
      EXPECT_TRUE(reduced) << name << " seed " << seed;
    }
  }
}

TEST(Design, BiasTable) {
  DefectProfile p;
  p.retrieval_hit_rate = 0.1;
  p.failure_families = {"f1"};
  const auto w = bias_weights(p);
  EXPECT_EQ(w[static_cast<std::size_t>(MutationSite::kRetrieveK)], 4.0);
  EXPECT_EQ(w[static_cast<std::size_t>(MutationSite::kEncodeStrategy)], 3.0);
  EXPECT_EQ(w[static_cast<std::size_t>(MutationSite::kManageStrategy)], 1.0);
  DefectProfile q;
  q.retrieval_hit_rate = 1.0;
  q.dead_item_fraction = 0.8;
  q.store_growth = 3.0;
  const auto v = bias_weights(q);
  EXPECT_EQ(v[static_cast<std::size_t>(MutationSite::kManageStrategy)], 6.0);
  EXPECT_EQ(v[static_cast<std::size_t>(MutationSite::kEncodeMaxItems)], 2.0);
  EXPECT_EQ(v[static_cast<std::size_t>(MutationSite::kStoreCapacity)], 2.0);
  EXPECT_EQ(v[static_cast<std::size_t>(MutationSite::kRetrieveK)], 1.0);
}

TEST(Design, DescendantsAlwaysValidate) {
  Rng rng(500);
  const auto names = preset_names();
  for (int i = 0; i < 500; ++i) {
    MemoryGenotype parent = preset(names[rng.below(names.size())]);
    for (int d = static_cast<int>(rng.below(3)); d > 0; --d) parent = mutate(parent, rng.next(), d);
    DefectProfile p;
    p.retrieval_hit_rate = rng.unit();
    p.dead_item_fraction = rng.unit();
    p.memory_token_overhead = rng.unit();
    p.store_growth = rng.unit() * 4;
    if (rng.unit() < 0.5) p.failure_families = {"f"};
    for (const auto& k : design(parent, p, 1 + static_cast<int>(rng.below(3)),
                                Proposer::kDeterministic, rng.next())) {
      ASSERT_TRUE(validate(k).empty()) << serialize(k);
    }
  }
}

// -- evolution ---------------------------------------------------------------------

EvolutionConfig small_config() {
  EvolutionConfig c;
  c.K_max = 2;
  c.n_new = 8;
  c.n_reused = 4;
  c.seed = 3;
  c.max_parallel = 2;
  return c;
}

TEST(Evolution, ConfigJson) {
  EvolutionConfig c = small_config();
  c.prices = {0.25, 2.0};
  c.proposer = Proposer::kLlm;
  Json j;
  to_json(j, c);
  EXPECT_EQ(j.get<EvolutionConfig>(), c);
  EXPECT_EQ(Json::object().get<EvolutionConfig>(), EvolutionConfig{});
  EXPECT_THROW(Json({{"K_maxx", 3}}).get<EvolutionConfig>(), ValidationError);
  EXPECT_THROW(Json({{"S", 0}}).get<EvolutionConfig>(), ValidationError);
}

TEST(Evolution, ResolveInitial) {
  testing::TempDir dir("init");
  EXPECT_EQ(resolve_initial("voyager", {}), preset("voyager"));
  MemoryGenotype g = preset("awm");
  g.name = "mine";
  save_genotype(dir / "mine.genotype.json", g);
  EXPECT_EQ(resolve_initial("mine.genotype.json", dir.path()), g);
  EXPECT_THROW(resolve_initial("missing.json", dir.path()), ValidationError);
}

TEST(Evolution, CandidateCountLaw) {
  const auto pool = generate_tasks(TaskGenConfig{});
  for (bool elitism : {false, true}) {
    EvolutionConfig c = small_config();
    c.elitism = elitism;
    EvolutionState s = initial_state(c, preset("dilu"));
    EvolutionContext ctx{&pool, testing::strict_stub(), {}, nullptr};
    s = evolve_iteration(s, ctx);
    EXPECT_EQ(s.candidates.size(), elitism ? 4u : 3u);
    EXPECT_EQ(s.candidate_parents.size(), s.candidates.size());
    s = evolve_iteration(s, ctx);
    EXPECT_TRUE(s.finished());
    EXPECT_TRUE(s.candidates.empty());
    EXPECT_EQ(s.candidates_evaluated(), elitism ? 5u : 4u);
    EXPECT_EQ(s.episodes_run(), s.candidates_evaluated() * 12);
    EXPECT_THROW(evolve_iteration(s, ctx), ValidationError);
  }
}

TEST(Evolution, DeterministicLineageAndResume) {
  const auto pool = generate_tasks(TaskGenConfig{});
  testing::TempDir a("evo");
  testing::TempDir b("evo");
  testing::TempDir c("evo");
  EvolutionConfig cfg = small_config();
  const auto ra = run_evolution(cfg, preset("dilu"), pool, testing::strict_stub(), a.path());
  run_evolution(cfg, preset("dilu"), pool, testing::strict_stub(), b.path());
  EXPECT_EQ(read_text_file(a / "evolution.jsonl"), read_text_file(b / "evolution.jsonl"));
  EXPECT_TRUE(std::filesystem::exists(a / "champion.genotype.json"));
  EXPECT_EQ(load_genotype(a / "champion.genotype.json"), ra.champion.genotype);
  EXPECT_TRUE(std::filesystem::exists(a / "iter-0" / "cand-0" / "profile.json"));

  // Stop after one iteration, then resume in a new call.
  EvolutionConfig one = cfg;
  EvolutionState s = initial_state(cfg, preset("dilu"));
  EvolutionContext ctx{&pool, testing::strict_stub(), c.path(), nullptr};
  s = evolve_iteration(s, ctx);
  Json j;
  to_json(j, s);
  write_json_file(c / "state.json", j);
  const auto rc = run_evolution(one, preset("dilu"), pool, testing::strict_stub(), c.path());
  EXPECT_EQ(read_text_file(a / "evolution.jsonl"), read_text_file(c / "evolution.jsonl"));
  EXPECT_EQ(rc.champion.genotype, ra.champion.genotype);

  EvolutionConfig other = cfg;
  other.seed = 99;
  EXPECT_THROW(run_evolution(other, preset("dilu"), pool, testing::strict_stub(), a.path()),
               ValidationError);
}

TEST(Evolution, StateRoundTrip) {
  const auto pool = generate_tasks(TaskGenConfig{});
  EvolutionState s = initial_state(small_config(), preset("expel"));
  EvolutionContext ctx{&pool, testing::strict_stub(), {}, nullptr};
  s = evolve_iteration(s, ctx);
  Json j;
  to_json(j, s);
  const EvolutionState back = state_from_json(j, pool);
  Json k;
  to_json(k, back);
  EXPECT_EQ(j, k);
  EXPECT_EQ(back.previous_batch->ordered(), s.previous_batch->ordered());
}

TEST(Evolution, LineageRecords) {
  const auto pool = generate_tasks(TaskGenConfig{});
  EvolutionState s = initial_state(small_config(), preset("dilu"));
  EvolutionContext ctx{&pool, testing::strict_stub(), {}, nullptr};
  s = evolve_iteration(evolve_iteration(s, ctx), ctx);
  const auto records = lineage_records(s);
  ASSERT_EQ(records.size(), 4u);
  EXPECT_TRUE(records[0].at("parent_hash").is_null());
  EXPECT_EQ(records[0].at("selected"), true);
  for (std::size_t i = 1; i < 4; ++i) {
    EXPECT_EQ(records[i].at("parent_hash"), records[0].at("genotype_hash"));
    EXPECT_EQ(records[i].at("lineage"), Json::array({"dilu"}));
  }
}

}  // namespace
}  // namespace evolab
