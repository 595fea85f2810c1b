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

#include "evolab/genotype/genotype.h"

#include <algorithm>
#include <set>

#include "evolab/core/enum_names.h"
#include "evolab/core/errors.h"
#include "evolab/core/hash.h"

namespace evolab {
namespace {

constexpr EnumNames<EncodeStrategy, 6> kEncodeNames{{
    {EncodeStrategy::kVerbatim, "verbatim"},
    {EncodeStrategy::kSummary, "summary"},
    {EncodeStrategy::kInsight, "insight"},
    {EncodeStrategy::kWorkflow, "workflow"},
    {EncodeStrategy::kTipsShortcuts, "tips_shortcuts"},
    {EncodeStrategy::kToolSynthesis, "tool_synthesis"},
}};

constexpr EnumNames<SuccessFilter, 3> kFilterNames{{
    {SuccessFilter::kAll, "all"},
    {SuccessFilter::kSuccessOnly, "success_only"},
    {SuccessFilter::kContrastive, "contrastive"},
}};

constexpr EnumNames<RetrieveStrategy, 4> kRetrieveNames{{
    {RetrieveStrategy::kSemanticTopK, "semantic_top_k"},
    {RetrieveStrategy::kContrastivePair, "contrastive_pair"},
    {RetrieveStrategy::kFunctionMatch, "function_match"},
    {RetrieveStrategy::kReturnAll, "return_all"},
}};

constexpr EnumNames<ManageStrategy, 4> kManageNames{{
    {ManageStrategy::kNone, "none"},
    {ManageStrategy::kDedup, "dedup"},
    {ManageStrategy::kPruneByScore, "prune_by_score"},
    {ManageStrategy::kConsolidate, "consolidate"},
}};

void require_keys(const Json& j, std::string_view where,
                  std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) {
    throw ValidationError(std::string(where) + " must be an object");
  }
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ValidationError("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

template <typename T>
T field(const Json& j, const char* key, std::string_view where) {
  if (!j.contains(key)) {
    throw ValidationError("missing key '" + std::string(key) + "' in " +
                          std::string(where));
  }
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ValidationError("key '" + std::string(key) + "' in " +
                          std::string(where) + " has the wrong type");
  }
}

Json stages_json(const std::optional<std::vector<Stage>>& stages) {
  if (!stages) return nullptr;
  Json arr = Json::array();
  for (Stage s : *stages) arr.push_back(to_string(s));
  return arr;
}

Json stage_fields(const MemoryGenotype& g) {
  Json capacity = g.store.capacity ? Json(*g.store.capacity) : Json("unlimited");
  return Json{
      {"encode",
       {{"strategy", to_string(g.encode.strategy)},
        {"secondary", g.encode.secondary
                          ? Json(to_string(*g.encode.secondary))
                          : Json(nullptr)},
        {"params",
         {{"success_filter", to_string(g.encode.success_filter)},
          {"max_items_per_trajectory", g.encode.max_items_per_trajectory},
          {"max_chars", g.encode.max_chars}}}}},
      {"store",
       {{"strategy", to_string(g.store.strategy)},
        {"params", {{"capacity", capacity}}}}},
      {"retrieve",
       {{"strategy", to_string(g.retrieve.strategy)},
        {"params",
         {{"k", g.retrieve.k},
          {"min_score", g.retrieve.min_score},
          {"stage_filter", stages_json(g.retrieve.stage_filter)}}}}},
      {"manage",
       {{"strategy", to_string(g.manage.strategy)},
        {"params",
         {{"trigger_every", g.manage.trigger_every},
          {"dedup_threshold", g.manage.dedup_threshold},
          {"capacity", g.manage.capacity}}}}},
  };
}

}  // namespace

std::string_view to_string(EncodeStrategy v) { return enum_name(kEncodeNames, v); }
std::string_view to_string(SuccessFilter v) { return enum_name(kFilterNames, v); }
std::string_view to_string(RetrieveStrategy v) { return enum_name(kRetrieveNames, v); }
std::string_view to_string(ManageStrategy v) { return enum_name(kManageNames, v); }

EncodeStrategy parse_encode_strategy(std::string_view t) {
  return enum_parse(kEncodeNames, t, "encode strategy");
}
SuccessFilter parse_success_filter(std::string_view t) {
  return enum_parse(kFilterNames, t, "success_filter");
}
RetrieveStrategy parse_retrieve_strategy(std::string_view t) {
  return enum_parse(kRetrieveNames, t, "retrieve strategy");
}
ManageStrategy parse_manage_strategy(std::string_view t) {
  return enum_parse(kManageNames, t, "manage strategy");
}

std::vector<std::string> validate(const MemoryGenotype& g) {
  std::vector<std::string> v;
  if (g.schema_version != kGenotypeSchemaVersion) {
    v.push_back("schema_version must be " + std::to_string(kGenotypeSchemaVersion));
  }
  if (g.name.empty()) v.push_back("name must be non-empty");

  if (g.encode.max_items_per_trajectory < 1) {
    v.push_back("encode.max_items_per_trajectory must be >= 1");
  }
  if (g.encode.max_chars < 1) v.push_back("encode.max_chars must be >= 1");
  if (g.encode.secondary && *g.encode.secondary == g.encode.strategy) {
    v.push_back("encode.secondary must differ from encode.strategy");
  }

  if (g.store.capacity && *g.store.capacity < 1) {
    v.push_back("store.capacity must be >= 1 or unlimited");
  }

  if (g.retrieve.k < 0) v.push_back("retrieve.k must be >= 0");
  if (!(g.retrieve.min_score >= -1.0 && g.retrieve.min_score <= 1.0)) {
    v.push_back("retrieve.min_score must lie in [-1, 1]");
  }
  if (g.retrieve.stage_filter) {
    const auto& stages = *g.retrieve.stage_filter;
    if (stages.empty()) v.push_back("retrieve.stage_filter must not be empty");
    std::set<Stage> unique(stages.begin(), stages.end());
    if (unique.size() != stages.size()) {
      v.push_back("retrieve.stage_filter has duplicate stages");
    }
  }

  if (g.manage.trigger_every < 1) v.push_back("manage.trigger_every must be >= 1");
  if (!(g.manage.dedup_threshold > 0.0 && g.manage.dedup_threshold <= 1.0)) {
    v.push_back("manage.dedup_threshold must lie in (0, 1]");
  }
  if (g.manage.capacity < 1) v.push_back("manage.capacity must be >= 1");

  if (g.retrieve.strategy == RetrieveStrategy::kFunctionMatch &&
      g.store.strategy != StoreStrategy::kKeyedLibrary) {
    v.push_back("retrieve=function_match requires store=keyed_library");
  }
  if ((g.retrieve.strategy == RetrieveStrategy::kSemanticTopK ||
       g.retrieve.strategy == RetrieveStrategy::kContrastivePair) &&
      !provides_embeddings(g.store.strategy)) {
    v.push_back("retrieve=" + std::string(to_string(g.retrieve.strategy)) +
                " requires a store with embeddings (vector_index or append_log)");
  }
  return v;
}

bool same_architecture(const MemoryGenotype& a, const MemoryGenotype& b) {
  return a.encode == b.encode && a.store == b.store && a.retrieve == b.retrieve &&
         a.manage == b.manage;
}

void to_json(Json& j, const MemoryGenotype& g) {
  j = stage_fields(g);
  j["schema_version"] = g.schema_version;
  j["name"] = g.name;
  j["lineage"] = g.lineage;
  j["notes"] = g.notes;
}

void from_json(const Json& j, MemoryGenotype& g) {
  require_keys(j, "genotype",
               {"schema_version", "name", "lineage", "notes", "encode", "store",
                "retrieve", "manage"});
  g.schema_version = field<int>(j, "schema_version", "genotype");
  if (g.schema_version != kGenotypeSchemaVersion) {
    throw ValidationError("unsupported schema_version " +
                          std::to_string(g.schema_version));
  }
  g.name = field<std::string>(j, "name", "genotype");
  g.lineage = j.value("lineage", std::vector<std::string>{});
  g.notes = j.value("notes", std::vector<std::string>{});

  const Json& enc = j.at("encode");
  require_keys(enc, "encode", {"strategy", "secondary", "params"});
  g.encode.strategy = parse_encode_strategy(field<std::string>(enc, "strategy", "encode"));
  g.encode.secondary.reset();
  if (enc.contains("secondary") && !enc.at("secondary").is_null()) {
    g.encode.secondary =
        parse_encode_strategy(field<std::string>(enc, "secondary", "encode"));
  }
  const Json& ep = enc.at("params");
  require_keys(ep, "encode.params",
               {"success_filter", "max_items_per_trajectory", "max_chars"});
  g.encode.success_filter =
      parse_success_filter(field<std::string>(ep, "success_filter", "encode.params"));
  g.encode.max_items_per_trajectory =
      field<int>(ep, "max_items_per_trajectory", "encode.params");
  g.encode.max_chars = field<int>(ep, "max_chars", "encode.params");

  const Json& st = j.at("store");
  require_keys(st, "store", {"strategy", "params"});
  g.store.strategy = parse_backend_kind(field<std::string>(st, "strategy", "store"));
  const Json& sp = st.at("params");
  require_keys(sp, "store.params", {"capacity"});
  const Json& cap = sp.at("capacity");
  if (cap.is_string() && cap.get<std::string>() == "unlimited") {
    g.store.capacity.reset();
  } else if (cap.is_number_integer()) {
    g.store.capacity = cap.get<int>();
  } else {
    throw ValidationError("store.params.capacity must be an integer or \"unlimited\"");
  }

  const Json& re = j.at("retrieve");
  require_keys(re, "retrieve", {"strategy", "params"});
  g.retrieve.strategy =
      parse_retrieve_strategy(field<std::string>(re, "strategy", "retrieve"));
  const Json& rp = re.at("params");
  require_keys(rp, "retrieve.params", {"k", "min_score", "stage_filter"});
  g.retrieve.k = field<int>(rp, "k", "retrieve.params");
  g.retrieve.min_score = field<double>(rp, "min_score", "retrieve.params");
  g.retrieve.stage_filter.reset();
  if (rp.contains("stage_filter") && !rp.at("stage_filter").is_null()) {
    std::vector<Stage> stages;
    for (const auto& s : rp.at("stage_filter")) {
      stages.push_back(parse_stage(s.get<std::string>()));
    }
    g.retrieve.stage_filter = std::move(stages);
  }

  const Json& ma = j.at("manage");
  require_keys(ma, "manage", {"strategy", "params"});
  g.manage.strategy = parse_manage_strategy(field<std::string>(ma, "strategy", "manage"));
  const Json& mp = ma.at("params");
  require_keys(mp, "manage.params", {"trigger_every", "dedup_threshold", "capacity"});
  g.manage.trigger_every = field<int>(mp, "trigger_every", "manage.params");
  g.manage.dedup_threshold = field<double>(mp, "dedup_threshold", "manage.params");
  g.manage.capacity = field<int>(mp, "capacity", "manage.params");
}

std::string serialize(const MemoryGenotype& genotype) {
  return Json(genotype).dump(2) + "\n";
}

MemoryGenotype deserialize(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("genotype is not valid JSON: ") + e.what());
  }
  return j.get<MemoryGenotype>();
}

MemoryGenotype load_genotype(const std::filesystem::path& path) {
  try {
    return deserialize(read_text_file(path));
  } catch (const InitializationError&) {
    throw;
  } catch (const std::exception& e) {
    throw InitializationError(path, e.what());
  }
}

void save_genotype(const std::filesystem::path& path,
                   const MemoryGenotype& genotype) {
  write_text_file(path, serialize(genotype));
}

std::string architecture_hash(const MemoryGenotype& genotype) {
  return hex64(fnv1a64(stage_fields(genotype).dump()));
}

}  // namespace evolab
