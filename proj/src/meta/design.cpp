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

#include "evolab/meta/design.h"

#include <algorithm>

#include "evolab/core/enum_names.h"
#include "evolab/core/errors.h"
#include "evolab/llm/prompts.h"

namespace evolab {
namespace {

constexpr EnumNames<Proposer, 2> kProposerNames{{
    {Proposer::kDeterministic, "deterministic"},
    {Proposer::kLlm, "llm"},
}};

// Distinct-descendant search gives up after this many reseeded mutations.
constexpr int kMaxMutationAttempts = 64;

void scale(SiteWeights& w, std::string_view stage, double factor) {
  for (std::size_t i = 0; i < kMutationSiteCount; ++i) {
    if (stage_of(static_cast<MutationSite>(i)) == stage) w[i] *= factor;
  }
}

void scale(SiteWeights& w, MutationSite site, double factor) {
  w[static_cast<std::size_t>(site)] *= factor;
}

bool is_new(const MemoryGenotype& g, const MemoryGenotype& parent,
            const std::vector<MemoryGenotype>& siblings) {
  if (same_architecture(g, parent)) return false;
  return std::none_of(siblings.begin(), siblings.end(),
                      [&](const MemoryGenotype& s) { return same_architecture(g, s); });
}

void adopt(MemoryGenotype& child, const MemoryGenotype& parent, int s) {
  child.lineage = parent.lineage;
  child.lineage.push_back(parent.name);
  child.name = parent.name + "." + std::to_string(s);
  child.schema_version = kGenotypeSchemaVersion;
}

std::string describe(const MutationRecord& r) {
  std::string out = "mutation " + std::string(to_string(r.site));
  if (r.repaired) out += ", repaired " + std::string(to_string(*r.repaired));
  return out + " (" + std::string(kBiasTableVersion) + ")";
}

MemoryGenotype deterministic_child(const MemoryGenotype& parent, const DefectProfile& profile,
                                   int s, int S, uint64_t seed,
                                   const std::vector<MemoryGenotype>& siblings) {
  MutationRecord record{};
  if (s == 0 && wants_context_reduction(profile)) {
    if (auto reduced = reduce_context(parent, &record);
        reduced && is_new(*reduced, parent, siblings)) {
      MemoryGenotype child = *reduced;
      adopt(child, parent, s);
      child.notes = parent.notes;
      child.notes.push_back("context reduction: " + std::string(to_string(record.site)) + " (" +
                            std::string(kBiasTableVersion) + ")");
      return child;
    }
  }
  const SiteWeights weights = bias_weights(profile);
  for (int attempt = 0; attempt < kMaxMutationAttempts; ++attempt) {
    MemoryGenotype child = mutate_weighted(parent, weights, seed, s + attempt * S, &record);
    if (!is_new(child, parent, siblings)) continue;
    adopt(child, parent, s);
    child.notes = parent.notes;
    child.notes.push_back(describe(record));
    return child;
  }
  throw Error("design: no distinct descendant found for '" + parent.name + "'");
}

}  // namespace

std::string_view to_string(Proposer proposer) { return enum_name(kProposerNames, proposer); }

Proposer parse_proposer(std::string_view text) {
  return enum_parse(kProposerNames, text, "proposer");
}

SiteWeights bias_weights(const DefectProfile& profile) {
  SiteWeights w;
  w.fill(1.0);
  if (profile.retrieval_hit_rate < 0.3) scale(w, "retrieve", 4.0);
  if (profile.dead_item_fraction > 0.5) {
    scale(w, "manage", 3.0);
    scale(w, MutationSite::kEncodeMaxItems, 2.0);
  }
  if (!profile.failure_families.empty()) scale(w, "encode", 3.0);
  if (profile.store_growth > 2.0) {
    scale(w, "manage", 2.0);
    scale(w, MutationSite::kStoreCapacity, 2.0);
  }
  return w;
}

bool wants_context_reduction(const DefectProfile& profile) {
  return profile.memory_token_overhead > 0.5;
}

MemoryGenotype parse_proposal(const std::string& reply) {
  const auto open = reply.find('{');
  const auto close = reply.rfind('}');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    throw ValidationError("reply contains no JSON object");
  }
  MemoryGenotype g;
  try {
    g = deserialize(std::string_view(reply).substr(open, close - open + 1));
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception& e) {
    throw ValidationError(std::string("unparseable genotype: ") + e.what());
  }
  const auto violations = validate(g);
  if (!violations.empty()) {
    std::string msg = "invalid genotype:";
    for (const auto& v : violations) msg += " " + v + ";";
    throw ValidationError(msg);
  }
  return g;
}

std::vector<MemoryGenotype> design(const MemoryGenotype& parent, const DefectProfile& profile,
                                   int S, Proposer proposer, uint64_t seed, Gateway* gateway) {
  if (S < 1) throw ValidationError("design: S must be >= 1");
  if (const auto v = validate(parent); !v.empty()) {
    throw ValidationError("design: parent '" + parent.name + "' does not validate");
  }
  std::vector<MemoryGenotype> out;
  Json defects;
  to_json(defects, profile);
  for (int s = 0; s < S; ++s) {
    if (proposer == Proposer::kLlm) {
      std::string errors;
      bool done = false;
      for (int attempt = 0; attempt <= kDesignRepairRetries && !done; ++attempt) {
        try {
          if (!gateway) throw GatewayError(0, "no gateway configured for design");
          CompletionParams params;
          params.tag = "design";
          params.max_tokens = 1024;
          const std::string prompt =
              render_prompt("design.v1", {{"VARIANT", std::to_string(s)},
                                          {"PARENT", serialize(parent)},
                                          {"DEFECTS", dump_line(defects)},
                                          {"PREVIOUS_ERRORS", errors.empty() ? "none" : errors}});
          MemoryGenotype child = parse_proposal(gateway->complete(prompt, params).text);
          if (!is_new(child, parent, out)) {
            throw ValidationError("proposal repeats the parent or a sibling architecture");
          }
          adopt(child, parent, s);
          child.notes = parent.notes;
          child.notes.push_back("llm proposal (attempt " + std::to_string(attempt + 1) + ")");
          out.push_back(std::move(child));
          done = true;
        } catch (const Error& e) {
          errors = e.what();
        }
      }
      if (done) continue;
      MemoryGenotype child = deterministic_child(parent, profile, s, S, seed, out);
      child.notes.push_back("llm proposal fallback after " +
                            std::to_string(kDesignRepairRetries + 1) + " attempts: " + errors);
      out.push_back(std::move(child));
      continue;
    }
    out.push_back(deterministic_child(parent, profile, s, S, seed, out));
  }
  return out;
}

}  // namespace evolab
