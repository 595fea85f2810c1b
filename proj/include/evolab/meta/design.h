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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "evolab/genotype/genotype.h"
#include "evolab/genotype/mutate.h"
#include "evolab/llm/gateway.h"
#include "evolab/meta/diagnose.h"

namespace evolab {

enum class Proposer { kDeterministic, kLlm };

std::string_view to_string(Proposer proposer);
Proposer parse_proposer(std::string_view text);

inline constexpr std::string_view kBiasTableVersion = "bias-v1";
inline constexpr int kDesignRepairRetries = 2;

/// Mutation-site weights for a defect profile (see the bias table in the
/// README). All weights start at 1.
SiteWeights bias_weights(const DefectProfile& profile);

/// Whether the profile asks descendant 0 to shrink the memory context.
bool wants_context_reduction(const DefectProfile& profile);

/// Extracts the outermost {...} of a reply, deserializes and validates it.
/// Throws ValidationError with the reason on failure.
MemoryGenotype parse_proposal(const std::string& reply);

/// S valid descendants of `parent`, each named "<parent>.<s>" with the parent
/// appended to its lineage and architecturally distinct from the parent and
/// from its siblings. The llm proposer falls back to the deterministic path
/// after kDesignRepairRetries failed repairs and records why in notes.
std::vector<MemoryGenotype> design(const MemoryGenotype& parent, const DefectProfile& profile,
                                   int S, Proposer proposer, uint64_t seed,
                                   Gateway* gateway = nullptr);

}  // namespace evolab
