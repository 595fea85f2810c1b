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
#include "evolab/genotype/modular_provider.h"
#include "evolab/genotype/mutate.h"
#include "evolab/genotype/presets.h"
#include "evolab/genotype/strategies.h"
#include "test_support.h"

namespace evolab {
namespace {

using testing::scripted_trajectory;

// Names of the stage fields that differ between two genotypes.
std::set<std::string> field_diff(const MemoryGenotype& a, const MemoryGenotype& b) {
  std::set<std::string> d;
  auto check = [&](bool same, const char* name) {
    if (!same) d.insert(name);
  };
  check(a.encode.strategy == b.encode.strategy, "encode.strategy");
  check(a.encode.secondary == b.encode.secondary, "encode.secondary");
  check(a.encode.success_filter == b.encode.success_filter, "encode.success_filter");
  check(a.encode.max_items_per_trajectory == b.encode.max_items_per_trajectory,
        "encode.max_items_per_trajectory");
  check(a.encode.max_chars == b.encode.max_chars, "encode.max_chars");
  check(a.store.strategy == b.store.strategy, "store.strategy");
  check(a.store.capacity == b.store.capacity, "store.capacity");
  check(a.retrieve.strategy == b.retrieve.strategy, "retrieve.strategy");
  check(a.retrieve.k == b.retrieve.k, "retrieve.k");
  check(a.retrieve.min_score == b.retrieve.min_score, "retrieve.min_score");
  check(a.retrieve.stage_filter == b.retrieve.stage_filter, "retrieve.stage_filter");
  check(a.manage.strategy == b.manage.strategy, "manage.strategy");
  check(a.manage.trigger_every == b.manage.trigger_every, "manage.trigger_every");
  check(a.manage.dedup_threshold == b.manage.dedup_threshold, "manage.dedup_threshold");
  check(a.manage.capacity == b.manage.capacity, "manage.capacity");
  return d;
}

bool mentions(const std::vector<std::string>& violations, const std::string& text) {
  for (const auto& v : violations) {
    if (v.find(text) != std::string::npos) return true;
  }
  return false;
}

std::vector<TaskSpec> small_pool() {
  TaskGenConfig config;
  config.families = 6;
  config.tasks_per_family = 3;
  return generate_tasks(config);
}

// One trajectory per task: successes solve on the second lookup, every
// third task fails after two dead keys.
std::vector<TrajectoryData> stream(const std::vector<TaskSpec>& tasks) {
  std::vector<TrajectoryData> out;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto dead = testing::dead_keys(tasks[i]);
    if (i % 3 == 2) {
      out.push_back(scripted_trajectory(tasks[i], {dead[0], dead[1]}));
    } else {
      out.push_back(scripted_trajectory(tasks[i], {dead[0], testing::solution_key(tasks[i])}));
    }
  }
  return out;
}

MemoryRequest request_for(const TaskSpec& task, int max_items = 8) {
  MemoryRequest r;
  r.query = task.query;
  r.max_items = max_items;
  return r;
}

std::unique_ptr<ModularProvider> make(const MemoryGenotype& g) {
  auto p = instantiate(g, testing::strict_gateway());
  p->initialize({});
  return p;
}

// -- validation --------------------------------------------------------------

TEST(Genotype, EveryPresetValidates) {
  for (const auto& name : preset_names()) {
    EXPECT_TRUE(validate(preset(name)).empty()) << name;
    EXPECT_EQ(preset(name).name, name);
  }
  EXPECT_TRUE(validate(preset("voyager")).empty());
}

TEST(Genotype, CrossFieldRule) {
  MemoryGenotype g = preset("dilu");
  g.retrieve.strategy = RetrieveStrategy::kFunctionMatch;
  EXPECT_TRUE(mentions(validate(g), "function_match requires store=keyed_library"));
  g = preset("skillweaver");
  g.retrieve.strategy = RetrieveStrategy::kSemanticTopK;
  EXPECT_TRUE(mentions(validate(g), "requires a store with embeddings"));
}

TEST(Genotype, RangeChecks) {
  MemoryGenotype g = preset("dilu");
  g.retrieve.k = -1;
  EXPECT_TRUE(mentions(validate(g), "retrieve.k"));
  g = preset("dilu");
  g.manage.dedup_threshold = 0.0;
  EXPECT_TRUE(mentions(validate(g), "dedup_threshold"));
  g = preset("dilu");
  g.encode.secondary = g.encode.strategy;
  EXPECT_TRUE(mentions(validate(g), "secondary"));
  g = preset("dilu");
  g.retrieve.stage_filter = std::vector<Stage>{};
  EXPECT_TRUE(mentions(validate(g), "stage_filter"));
}

TEST(Genotype, UnknownPresetListsRegistry) {
  try {
    preset("memgpt");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("voyager"), std::string::npos);
  }
}

// Stage enums of each preset against the taxonomy mapping in the README.
TEST(Genotype, PresetTaxonomyMapping) {
  using E = EncodeStrategy;
  using R = RetrieveStrategy;
  using M = ManageStrategy;
  using S = StoreStrategy;
  struct Row {
    const char* name;
    E encode;
    std::optional<E> secondary;
    SuccessFilter filter;
    S store;
    R retrieve;
    M manage;
  };
  const std::vector<Row> rows{
      {"voyager", E::kVerbatim, E::kTipsShortcuts, SuccessFilter::kAll, S::kVectorIndex, R::kSemanticTopK, M::kNone},
      {"expel", E::kInsight, E::kVerbatim, SuccessFilter::kContrastive, S::kVectorIndex, R::kContrastivePair, M::kNone},
      {"generative", E::kVerbatim, E::kInsight, SuccessFilter::kAll, S::kVectorIndex, R::kSemanticTopK, M::kNone},
      {"dilu", E::kVerbatim, std::nullopt, SuccessFilter::kAll, S::kVectorIndex, R::kSemanticTopK, M::kNone},
      {"awm", E::kWorkflow, std::nullopt, SuccessFilter::kSuccessOnly, S::kVectorIndex, R::kSemanticTopK, M::kNone},
      {"mobile_e", E::kTipsShortcuts, std::nullopt, SuccessFilter::kAll, S::kVectorIndex, R::kSemanticTopK, M::kNone},
      {"cheatsheet", E::kTipsShortcuts, std::nullopt, SuccessFilter::kAll, S::kAppendLog, R::kSemanticTopK, M::kNone},
      {"skillweaver", E::kToolSynthesis, std::nullopt, SuccessFilter::kSuccessOnly, S::kKeyedLibrary, R::kFunctionMatch, M::kPruneByScore},
      {"g_memory", E::kTipsShortcuts, E::kWorkflow, SuccessFilter::kAll, S::kVectorIndex, R::kSemanticTopK, M::kConsolidate},
      {"agent_kb", E::kTipsShortcuts, E::kWorkflow, SuccessFilter::kAll, S::kVectorIndex, R::kSemanticTopK, M::kDedup},
      {"memp", E::kTipsShortcuts, E::kWorkflow, SuccessFilter::kAll, S::kAppendLog, R::kSemanticTopK, M::kPruneByScore},
      {"evolver", E::kTipsShortcuts, E::kWorkflow, SuccessFilter::kAll, S::kAppendLog, R::kContrastivePair, M::kConsolidate},
  };
  ASSERT_EQ(rows.size(), preset_names().size());
  for (const auto& r : rows) {
    const MemoryGenotype g = preset(r.name);
    EXPECT_EQ(g.encode.strategy, r.encode) << r.name;
    EXPECT_EQ(g.encode.secondary, r.secondary) << r.name;
    EXPECT_EQ(g.encode.success_filter, r.filter) << r.name;
    EXPECT_EQ(g.store.strategy, r.store) << r.name;
    EXPECT_EQ(g.retrieve.strategy, r.retrieve) << r.name;
    EXPECT_EQ(g.manage.strategy, r.manage) << r.name;
  }
  EXPECT_EQ(preset_info("voyager").row, "I");
  EXPECT_EQ(preset_info("skillweaver").manage, "Skill Pruning");
}

// -- serialization -------------------------------------------------------------

TEST(Genotype, SerializationRoundTripIsTextExact) {
  for (const auto& name : preset_names()) {
    MemoryGenotype g = preset(name);
    g.notes = {"note"};
    g.lineage = {"root"};
    g.retrieve.stage_filter = std::vector<Stage>{Stage::kPlanning};
    g.store.capacity = 32;
    const std::string text = serialize(g);
    EXPECT_EQ(deserialize(text), g) << name;
    EXPECT_EQ(serialize(deserialize(text)), text) << name;
    EXPECT_EQ(text.back(), '\n');
  }
}

TEST(Genotype, DeserializeRejectsBadInput) {
  Json j;
  to_json(j, preset("dilu"));
  Json bad = j;
  bad["encode"]["strategy"] = "telepathy";
  EXPECT_THROW(deserialize(bad.dump()), ValidationError);
  bad = j;
  bad.erase("schema_version");
  EXPECT_THROW(deserialize(bad.dump()), ValidationError);
  bad = j;
  bad["schema_version"] = 99;
  EXPECT_THROW(deserialize(bad.dump()), ValidationError);
}

TEST(Genotype, ArchitectureHashIgnoresNames) {
  MemoryGenotype a = preset("dilu");
  MemoryGenotype b = a;
  b.name = "other";
  b.notes = {"x"};
  EXPECT_EQ(architecture_hash(a), architecture_hash(b));
  EXPECT_TRUE(same_architecture(a, b));
  b.retrieve.k = 5;
  EXPECT_NE(architecture_hash(a), architecture_hash(b));
  EXPECT_EQ(architecture_hash(a).size(), 16u);
}

// -- mutation ------------------------------------------------------------------

TEST(Mutation, Deterministic) {
  EXPECT_EQ(mutate(preset("dilu"), 7, 0), mutate(preset("dilu"), 7, 0));
}

TEST(Mutation, NamesAndLineage) {
  const MemoryGenotype child = mutate(preset("dilu"), 7, 2);
  EXPECT_EQ(child.name, "dilu.2");
  EXPECT_EQ(child.lineage, std::vector<std::string>{"dilu"});
}

// Every mutation validates and touches exactly the recorded site plus at
// most the recorded repair.
TEST(Mutation, OneFieldPlusRepairOverRandomTriples) {
  Rng rng(99);
  const auto names = preset_names();
  for (int i = 0; i < 500; ++i) {
    MemoryGenotype g = preset(names[rng.below(names.size())]);
    const int depth = static_cast<int>(rng.below(4));
    for (int d = 0; d < depth; ++d) g = mutate(g, rng.next(), d);
    MutationRecord record{};
    const uint64_t seed = rng.next();
    const int index = static_cast<int>(rng.below(10));
    const MemoryGenotype child = mutate(g, seed, index, &record);
    ASSERT_TRUE(validate(child).empty()) << serialize(child);
    std::set<std::string> expected{std::string(to_string(record.site))};
    if (record.repaired) expected.insert(std::string(to_string(*record.repaired)));
    ASSERT_EQ(field_diff(g, child), expected) << serialize(g) << serialize(child);
  }
}

TEST(Mutation, WeightsSteerTheSite) {
  SiteWeights w{};
  w[static_cast<std::size_t>(MutationSite::kRetrieveK)] = 1.0;
  for (int i = 0; i < 20; ++i) {
    MutationRecord record{};
    mutate_weighted(preset("dilu"), w, 3, i, &record);
    EXPECT_EQ(record.site, MutationSite::kRetrieveK);
  }
  w.fill(0.0);
  EXPECT_THROW(mutate_weighted(preset("dilu"), w, 3, 0), std::invalid_argument);
}

TEST(Mutation, ReduceContext) {
  MemoryGenotype g = preset("dilu");
  g.retrieve.k = 3;
  auto r = reduce_context(g);
  ASSERT_TRUE(r);
  EXPECT_LT(r->retrieve.k, 3);
  g.retrieve.k = 1;
  r = reduce_context(g);
  ASSERT_TRUE(r);
  EXPECT_LT(r->encode.max_chars, g.encode.max_chars);
  g.encode.max_chars = 200;
  EXPECT_FALSE(reduce_context(g));
}

// -- provider --------------------------------------------------------------------

TEST(Provider, InstantiateRejectsInvalid) {
  MemoryGenotype g = preset("dilu");
  g.retrieve.k = -1;
  EXPECT_THROW(instantiate(g), ValidationError);
}

TEST(Provider, FreshDirectoryIsEmpty) {
  testing::TempDir dir("prov");
  auto p = instantiate(preset("dilu"));
  EXPECT_TRUE(p->initialize(dir / "state"));
  EXPECT_TRUE(p->snapshot().empty());
  EXPECT_TRUE(p->initialize(dir / "state"));  // idempotent
}

TEST(Provider, PersistThenReload) {
  testing::TempDir dir("prov");
  const auto tasks = small_pool();
  auto p = instantiate(preset("dilu"));
  p->initialize(dir.path());
  for (int i = 0; i < 5; ++i) ASSERT_TRUE(p->take_in_memory(stream(tasks)[i]).ok);
  p->persist();
  auto q = instantiate(preset("dilu"));
  EXPECT_TRUE(q->initialize(dir.path()));
  EXPECT_EQ(q->snapshot().size(), 5u);
  EXPECT_EQ(q->snapshot(), p->snapshot());
  EXPECT_EQ(q->ingest_counter(), 5);
  const auto a = p->provide_memory(request_for(tasks[7]));
  const auto b = q->provide_memory(request_for(tasks[7]));
  EXPECT_EQ(a.scores, b.scores);
}

TEST(Provider, CorruptStoreNamesFile) {
  testing::TempDir dir("prov");
  write_text_file(dir / "memory.jsonl", "not json\n");
  auto p = instantiate(preset("dilu"));
  try {
    p->initialize(dir.path());
    FAIL();
  } catch (const InitializationError& e) {
    EXPECT_NE(std::string(e.what()).find("memory.jsonl"), std::string::npos);
  }
}

TEST(Provider, TamperedVectorsAreRejected) {
  testing::TempDir dir("prov");
  const auto tasks = small_pool();
  auto p = instantiate(preset("dilu"));
  p->initialize(dir.path());
  p->take_in_memory(stream(tasks)[0]);
  p->persist();
  auto items = load_items(dir / "memory.jsonl");
  items[0].content += " edited";
  save_items(dir / "memory.jsonl", items);
  auto q = instantiate(preset("dilu"));
  try {
    q->initialize(dir.path());
    FAIL();
  } catch (const InitializationError& e) {
    EXPECT_NE(std::string(e.what()).find("vectors.bin"), std::string::npos);
  }
}

TEST(Provider, VerbatimStoresOneItem) {
  const auto tasks = small_pool();
  auto p = make(preset("dilu"));
  const auto r = p->take_in_memory(stream(tasks)[0]);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.description, "1 raw_trajectory item");
  EXPECT_EQ(p->snapshot().size(), 1u);
}

TEST(Provider, SuccessOnlySkipsFailures) {
  const auto tasks = small_pool();
  auto p = make(preset("awm"));
  const auto failed = stream(tasks)[2];
  ASSERT_FALSE(failed.success);
  const auto r = p->take_in_memory(failed);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.description, "0 items");
}

TEST(Provider, ContrastivePairYieldsInsights) {
  const auto tasks = small_pool();
  auto p = make(preset("expel"));
  const auto dead = testing::dead_keys(tasks[0]);
  const auto failure = scripted_trajectory(tasks[0], {dead[0], dead[1]});
  const auto success = scripted_trajectory(tasks[1], {dead[2], testing::solution_key(tasks[1])});
  ASSERT_EQ(tasks[0].family_id, tasks[1].family_id);
  EXPECT_TRUE(p->take_in_memory(failure).ok);
  const auto r = p->take_in_memory(success);
  EXPECT_TRUE(r.ok);
  EXPECT_NE(r.description.find("insight item"), std::string::npos) << r.description;
  bool pair_item = false;
  for (const auto& m : p->snapshot()) {
    pair_item |= m.kind == ItemKind::kInsight && m.content.find("failed attempt") != std::string::npos;
  }
  EXPECT_TRUE(pair_item);
}

TEST(Provider, InvalidTrajectoryIsRejectedWithoutSideEffects) {
  const auto tasks = small_pool();
  auto p = make(preset("dilu"));
  auto t = stream(tasks)[0];
  t.total_tokens += 5;
  const auto r = p->take_in_memory(t);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.description.find("invalid trajectory"), std::string::npos);
  EXPECT_TRUE(p->snapshot().empty());
  EXPECT_EQ(p->ingest_counter(), 0);
}

TEST(Provider, GatewayFailureRollsBack) {
  const auto tasks = small_pool();
  // Strict stub with no fixtures: every encoder call misses.
  auto gw = std::make_shared<Gateway>(std::make_shared<StubBackend>(std::vector<StubFixture>{}, true));
  auto p = instantiate(preset("voyager"), gw);
  p->initialize({});
  const auto r = p->take_in_memory(stream(tasks)[0]);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.description.find("encode failed"), std::string::npos);
  EXPECT_TRUE(p->snapshot().empty());
}

TEST(Provider, EmptyStoreAndZeroBudget) {
  const auto tasks = small_pool();
  auto p = make(preset("dilu"));
  EXPECT_TRUE(p->provide_memory(request_for(tasks[0])).empty());
  p->take_in_memory(stream(tasks)[0]);
  const auto before = p->snapshot();
  EXPECT_TRUE(p->provide_memory(request_for(tasks[1], 0)).empty());
  EXPECT_EQ(p->snapshot(), before);
  MemoryRequest bad = request_for(tasks[1]);
  bad.max_items = -1;
  EXPECT_THROW(p->provide_memory(bad), ValidationError);
}

TEST(Provider, RetrievalPrefersOwnFamily) {
  const auto tasks = small_pool();
  auto p = make(preset("dilu"));
  const auto trajectories = stream(tasks);
  for (std::size_t i = 0; i < tasks.size(); i += 3) p->take_in_memory(trajectories[i]);
  for (std::size_t i = 1; i < tasks.size(); i += 3) {
    const auto r = p->provide_memory(request_for(tasks[i], 1));
    ASSERT_EQ(r.items.size(), 1u);
    EXPECT_EQ(r.items[0].source_task_id, tasks[i - 1].task_id);
    EXPECT_EQ(r.items[0].hit_count, 1);
  }
}

TEST(Provider, StageFilter) {
  const auto tasks = small_pool();
  MemoryGenotype g = preset("dilu");
  g.retrieve.stage_filter = std::vector<Stage>{Stage::kPlanning};
  auto p = make(g);
  p->take_in_memory(stream(tasks)[0]);
  MemoryRequest r = request_for(tasks[1]);
  EXPECT_FALSE(p->provide_memory(r).empty());
  r.stage = Stage::kExecution;
  EXPECT_TRUE(p->provide_memory(r).empty());
}

TEST(Provider, ToolLibraryIsKeyed) {
  const auto tasks = small_pool();
  auto p = make(preset("skillweaver"));
  const auto trajectories = stream(tasks);
  ASSERT_TRUE(p->take_in_memory(trajectories[0]).ok);
  ASSERT_TRUE(p->take_in_memory(trajectories[1]).ok);  // same family, same tool name
  const auto items = p->snapshot();
  ASSERT_EQ(items.size(), 1u);
  EXPECT_EQ(items[0].kind, ItemKind::kToolSpec);
  EXPECT_EQ(items[0].id, "tool:" + items[0].key);
  const auto r = p->provide_memory(request_for(tasks[2]));
  ASSERT_EQ(r.items.size(), 1u);
  EXPECT_EQ(r.items[0].id, items[0].id);
}

TEST(Manage, NoneIsNoOp) {
  const auto tasks = small_pool();
  auto p = make(preset("dilu"));
  for (const auto& t : stream(tasks)) p->take_in_memory(t);
  const auto report = p->manage();
  EXPECT_EQ(report.merged, 0);
  EXPECT_EQ(report.pruned, 0);
  EXPECT_EQ(report.deduplicated, 0);
  EXPECT_EQ(p->manage_cadence(), 0);
}

TEST(Manage, DedupRemovesNearDuplicate) {
  const auto embedder = std::make_shared<const HashingEmbedder>();
  const std::string a = "Tip: the code of the Alpine Kestrel is stored at registry.code";
  const std::string b = "Tip: the code of the Alpine Kestrel is stored at registry.code!";
  const std::string c = "Unrelated fact about river population counts";
  ASSERT_GT(cosine(embedder->embed(a), embedder->embed(b)), 0.9);
  ASSERT_LT(cosine(embedder->embed(a), embedder->embed(c)), 0.9);
  StoreBackend store(BackendKind::kVectorIndex, embedder);
  int step = 0;
  for (const auto& text : {a, b, c}) {
    MemoryItem m;
    m.id = "m" + std::to_string(step);
    m.content = text;
    m.created_at_step = step++;
    store.upsert(m);
  }
  ManageSpec spec;
  spec.strategy = ManageStrategy::kDedup;
  spec.dedup_threshold = 0.9;
  const auto report = make_manager(spec)->manage(store, *embedder, 3);
  EXPECT_EQ(report.deduplicated, 1);
  EXPECT_EQ(store.size(), 2u);
  EXPECT_TRUE(store.contains("m0"));
  EXPECT_TRUE(store.contains("m2"));
}

TEST(Manage, PruneEvictsLowestUtility) {
  const auto embedder = std::make_shared<const HashingEmbedder>();
  StoreBackend store(BackendKind::kVectorIndex, embedder);
  Rng rng(5);
  std::vector<MemoryItem> items;
  for (int i = 0; i < 5; ++i) {
    MemoryItem m;
    m.id = "m" + std::to_string(i);
    m.content = "item " + std::to_string(i);
    m.created_at_step = i;
    m.hit_count = static_cast<int64_t>(rng.below(6));
    m.success_assoc = static_cast<int64_t>(rng.below(static_cast<std::size_t>(m.hit_count) + 1));
    m.confidence = 0.5 + 0.1 * i;
    items.push_back(m);
    store.upsert(m);
  }
  // Oracle: full sort by (utility asc, created asc); the first two go.
  auto sorted = items;
  std::sort(sorted.begin(), sorted.end(), [](const MemoryItem& x, const MemoryItem& y) {
    const double ux = (x.success_assoc + x.confidence) / (x.hit_count + 1.0);
    const double uy = (y.success_assoc + y.confidence) / (y.hit_count + 1.0);
    if (ux != uy) return ux < uy;
    return x.created_at_step < y.created_at_step;
  });
  ManageSpec spec;
  spec.strategy = ManageStrategy::kPruneByScore;
  spec.capacity = 3;
  const auto report = make_manager(spec)->manage(store, *embedder, 5);
  EXPECT_EQ(report.pruned, 2);
  EXPECT_FALSE(store.contains(sorted[0].id));
  EXPECT_FALSE(store.contains(sorted[1].id));
  for (int i = 2; i < 5; ++i) EXPECT_TRUE(store.contains(sorted[static_cast<std::size_t>(i)].id));
}

TEST(Manage, ConsolidateMergesClusters) {
  const auto tasks = small_pool();
  MemoryGenotype g = preset("g_memory");
  auto p = make(g);
  const auto trajectories = stream(tasks);
  for (const auto& t : trajectories) p->take_in_memory(t);
  const std::size_t before = p->snapshot().size();
  const auto report = p->manage();
  const auto after = p->snapshot();
  EXPECT_LE(after.size(), before);
  EXPECT_EQ(static_cast<int64_t>(before - after.size()), report.removed());
  for (const auto& m : after) {
    if (!m.parent_ids.empty()) {
      EXPECT_EQ(m.id.rfind("merge-", 0), 0u);
      EXPECT_NO_THROW(check_item(m));
    }
  }
}

// -- properties over every preset --------------------------------------------

TEST(ProviderProperties, IngestRetrieveManageInvariants) {
  const auto tasks = small_pool();
  const auto trajectories = stream(tasks);
  Rng rng(17);
  for (const auto& name : preset_names()) {
    auto p = make(preset(name));
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
      const std::size_t before = p->snapshot().size();
      const auto r = p->take_in_memory(trajectories[i]);
      ASSERT_TRUE(r.ok) << name << ": " << r.description;
      const auto stored = p->snapshot();
      const auto capacity = p->genotype().store.capacity;
      if (!capacity) {
        ASSERT_GE(stored.size(), before) << name;
      }
      std::set<std::string> ids;
      for (const auto& m : stored) ids.insert(m.id);
      const int budget = static_cast<int>(rng.below(6));
      MemoryRequest req = request_for(tasks[rng.below(tasks.size())], budget);
      req.stage = static_cast<Stage>(rng.below(3));
      const auto resp = p->provide_memory(req);
      ASSERT_LE(resp.items.size(), static_cast<std::size_t>(budget)) << name;
      ASSERT_EQ(resp.items.size(), resp.scores.size());
      for (std::size_t k = 0; k < resp.items.size(); ++k) {
        ASSERT_TRUE(ids.contains(resp.items[k].id)) << name;
        if (k > 0) ASSERT_GE(resp.scores[k - 1], resp.scores[k]) << name;
      }
      if (i % 4 == 3) {
        const std::size_t pre = p->snapshot().size();
        const auto report = p->manage();
        ASSERT_LE(p->snapshot().size(), pre) << name;
        ASSERT_EQ(report.removed(), static_cast<int64_t>(pre - p->snapshot().size())) << name;
      }
    }
  }
}

// Two providers from one genotype, or from its serialized copy, answer a
// fixed stream identically.
TEST(ProviderProperties, ReplayEquivalence) {
  const auto tasks = small_pool();
  const auto trajectories = stream(tasks);
  for (const auto& name : preset_names()) {
    const MemoryGenotype g = preset(name);
    auto a = make(g);
    auto b = make(g);
    auto c = make(deserialize(serialize(g)));
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
      a->take_in_memory(trajectories[i]);
      b->take_in_memory(trajectories[i]);
      c->take_in_memory(trajectories[i]);
      const auto req = request_for(tasks[(i * 7) % tasks.size()], 4);
      const auto ra = a->provide_memory(req);
      const auto rb = b->provide_memory(req);
      const auto rc = c->provide_memory(req);
      ASSERT_EQ(ra.items, rb.items) << name;
      ASSERT_EQ(ra.scores, rb.scores) << name;
      ASSERT_EQ(ra.items, rc.items) << name;
      ASSERT_EQ(ra.scores, rc.scores) << name;
      if (i % 5 == 4) {
        ASSERT_EQ(a->manage(), b->manage()) << name;
        c->manage();
      }
    }
    EXPECT_EQ(a->snapshot(), c->snapshot()) << name;
  }
}

// Random mutation chains stay valid and instantiable.
TEST(GenotypeClosure, MutateChains) {
  Rng rng(2024);
  for (const auto& name : preset_names()) {
    for (int chain = 0; chain < 50; ++chain) {
      MemoryGenotype g = preset(name);
      for (int step = 0; step < 10; ++step) {
        g = mutate(g, rng.next(), step);
        ASSERT_TRUE(validate(g).empty()) << serialize(g);
        ASSERT_NO_THROW(instantiate(g));
      }
    }
  }
}

TEST(Strategies, FunctionMatchScore) {
  EXPECT_DOUBLE_EQ(function_match_score("currency_of_country", "What is the currency of Peru?"),
                   2.0 / 3.0);
  EXPECT_EQ(function_match_score("", "x"), 0.0);
}

TEST(Strategies, TruncateUtf8) {
  const std::string s = "ab\xC3\xA9";  // "abé"
  EXPECT_EQ(truncate_utf8(s, 3), "ab");
  EXPECT_EQ(truncate_utf8(s, 4), s);
}

TEST(Strategies, ItemUtility) {
  MemoryItem m;
  m.confidence = 1.0;
  EXPECT_DOUBLE_EQ(item_utility(m), 1.0);
  m.hit_count = 3;
  m.success_assoc = 1;
  EXPECT_DOUBLE_EQ(item_utility(m), 0.5);
}

}  // namespace
}  // namespace evolab
