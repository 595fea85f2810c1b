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

#include <cctype>
#include <set>
#include <sstream>

#include "evolab/core/errors.h"
#include "evolab/genotype/strategies.h"
#include "evolab/llm/prompts.h"

namespace evolab {
namespace {

constexpr double kSuccessConfidence = 1.0;
constexpr double kFailureConfidence = 0.5;
constexpr double kDerivedSuccessConfidence = 0.8;
constexpr double kDerivedFailureConfidence = 0.4;
constexpr double kPairConfidence = 0.9;

const std::set<std::string> kStopWords{
    "a", "an", "and", "are", "as", "at", "by", "for", "from", "how", "in",
    "is", "it", "of", "on", "or", "the", "to", "was", "what", "which", "who",
    "with"};

std::vector<std::string> words(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

/// First three content words of the query, joined by '_'.
std::string suggested_name(const std::string& query) {
  std::string name;
  int taken = 0;
  for (const auto& w : words(query)) {
    if (kStopWords.contains(w)) continue;
    if (std::isdigit(static_cast<unsigned char>(w.front()))) continue;
    if (!name.empty()) name += '_';
    name += w;
    if (++taken == 3) break;
  }
  return name.empty() ? "skill" : name;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// "- " bullet lines; the whole reply as one item when there are none.
std::vector<std::string> bullet_lines(const std::string& reply) {
  std::vector<std::string> out;
  std::istringstream in(reply);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.rfind("- ", 0) == 0) out.push_back(trim(line.substr(2)));
  }
  if (out.empty() && !trim(reply).empty()) out.push_back(trim(reply));
  return out;
}

double confidence_for(bool success) {
  return success ? kDerivedSuccessConfidence : kDerivedFailureConfidence;
}

class VerbatimEncoder final : public Encoder {
 public:
  explicit VerbatimEncoder(const EncodeSpec& spec) : spec_(spec) {}

  std::vector<EncodedDraft> encode(const TrajectoryData& t,
                                   const EncodeContext&) const override {
    std::string text = "TASK: " + t.query + "\n";
    text += std::string("OUTCOME: ") + (t.success ? "success" : "failure") + "\n";
    for (const auto& s : t.steps) {
      text += "STEP " + std::to_string(s.index) + ": " + s.action + " -> " +
              s.observation + "\n";
    }
    if (!t.prediction.empty()) text += "ANSWER: " + t.prediction + "\n";
    EncodedDraft d;
    d.kind = ItemKind::kRawTrajectory;
    d.content = truncate_utf8(text, static_cast<std::size_t>(spec_.max_chars));
    d.confidence = t.success ? kSuccessConfidence : kFailureConfidence;
    d.source_success = t.success;
    return {std::move(d)};
  }

 private:
  EncodeSpec spec_;
};

/// Shared machinery for the gateway-backed encoders.
class LlmEncoder : public Encoder {
 public:
  LlmEncoder(const EncodeSpec& spec, std::string prompt, std::string tag,
             ItemKind kind)
      : spec_(spec), prompt_(std::move(prompt)), tag_(std::move(tag)), kind_(kind) {}

  std::vector<EncodedDraft> encode(const TrajectoryData& t,
                                   const EncodeContext& ctx) const override {
    auto fields = trajectory_fields(t);
    fields["MAX_ITEMS"] = std::to_string(spec_.max_items_per_trajectory);
    fields["SUGGESTED_NAME"] = suggested_name(t.query);
    const std::string reply = call(ctx, render_prompt(prompt_, fields), tag_);
    return parse(reply, t.success, confidence_for(t.success));
  }

 protected:
  static std::string call(const EncodeContext& ctx, const std::string& prompt,
                          const std::string& tag) {
    if (!ctx.gateway) throw GatewayError(0, "no gateway configured for " + tag);
    CompletionParams params;
    params.tag = tag;
    return ctx.gateway->complete(prompt, params).text;
  }

  virtual std::vector<EncodedDraft> parse(const std::string& reply, bool success,
                                          double confidence) const {
    std::vector<EncodedDraft> out;
    for (const auto& line : bullet_lines(reply)) {
      if (static_cast<int>(out.size()) >= spec_.max_items_per_trajectory) break;
      EncodedDraft d;
      d.kind = kind_for(line);
      d.content = truncate_utf8(line, static_cast<std::size_t>(spec_.max_chars));
      d.confidence = confidence;
      d.source_success = success;
      if (!d.content.empty()) out.push_back(std::move(d));
    }
    return out;
  }

  virtual ItemKind kind_for(const std::string&) const { return kind_; }

  EncodeSpec spec_;
  std::string prompt_;
  std::string tag_;
  ItemKind kind_;
};

class InsightEncoder final : public LlmEncoder {
 public:
  explicit InsightEncoder(const EncodeSpec& spec)
      : LlmEncoder(spec, "encode_insight.v1", "encode.insight", ItemKind::kInsight) {}

  std::vector<EncodedDraft> encode_pair(const TrajectoryData& success,
                                        const TrajectoryData& failure,
                                        const EncodeContext& ctx) const override {
    const auto s = trajectory_fields(success);
    const auto f = trajectory_fields(failure);
    std::map<std::string, std::string> fields{
        {"MAX_ITEMS", std::to_string(spec_.max_items_per_trajectory)},
        {"SUCCESS_TASK_ID", success.task_id},
        {"SUCCESS_QUERY", success.query},
        {"SUCCESS_ACTIONS", s.at("ACTIONS")},
        {"SOLUTION_KEY", s.at("SOLUTION_KEY")},
        {"FAILURE_TASK_ID", failure.task_id},
        {"FAILURE_QUERY", failure.query},
        {"FAILURE_ACTIONS", f.at("ACTIONS")},
        {"FAILED_KEYS", f.at("FAILED_KEYS")}};
    const std::string reply =
        call(ctx, render_prompt("encode_insight_pair.v1", fields), "encode.insight.pair");
    return parse(reply, true, kPairConfidence);
  }
};

class TipsEncoder final : public LlmEncoder {
 public:
  explicit TipsEncoder(const EncodeSpec& spec)
      : LlmEncoder(spec, "encode_tips.v1", "encode.tips", ItemKind::kTip) {}

 protected:
  ItemKind kind_for(const std::string& line) const override {
    return line.rfind("Shortcut:", 0) == 0 ? ItemKind::kShortcut : ItemKind::kTip;
  }
};

class ToolEncoder final : public LlmEncoder {
 public:
  explicit ToolEncoder(const EncodeSpec& spec)
      : LlmEncoder(spec, "encode_tool.v1", "encode.tool", ItemKind::kToolSpec) {}

 protected:
  std::vector<EncodedDraft> parse(const std::string& reply, bool success,
                                  double confidence) const override {
    // One function per "def name(" occurrence.
    std::vector<EncodedDraft> out;
    std::size_t pos = reply.find("def ");
    while (pos != std::string::npos &&
           static_cast<int>(out.size()) < spec_.max_items_per_trajectory) {
      const std::size_t next = reply.find("\ndef ", pos + 4);
      const std::string body = reply.substr(
          pos, next == std::string::npos ? std::string::npos : next + 1 - pos);
      const std::size_t paren = body.find('(');
      std::string name = paren == std::string::npos ? "" : trim(body.substr(4, paren - 4));
      if (!name.empty()) {
        EncodedDraft d;
        d.kind = ItemKind::kToolSpec;
        d.key = name;
        d.content = truncate_utf8(trim(body), static_cast<std::size_t>(spec_.max_chars));
        d.confidence = confidence;
        d.source_success = success;
        out.push_back(std::move(d));
      }
      pos = next == std::string::npos ? next : next + 1;
    }
    return out;
  }
};

}  // namespace

std::string action_argument(const std::string& action) {
  const auto open = action.find('(');
  if (open == std::string::npos) return "";
  const auto close = action.find(')', open + 1);
  if (close == std::string::npos) return "";
  return action.substr(open + 1, close - open - 1);
}

std::string truncate_utf8(const std::string& text, std::size_t max_bytes) {
  if (text.size() <= max_bytes) return text;
  std::size_t cut = max_bytes;
  while (cut > 0 && (static_cast<unsigned char>(text[cut]) & 0xC0) == 0x80) --cut;
  return text.substr(0, cut);
}

std::map<std::string, std::string> trajectory_fields(const TrajectoryData& t) {
  std::string actions;
  std::string failed;
  std::string solution = "none";
  for (const auto& s : t.steps) {
    if (!actions.empty()) actions += "; ";
    actions += s.action + " -> " + s.observation;
    const std::string arg = action_argument(s.action);
    if (s.observation == kNotFound) {
      if (!arg.empty()) failed += (failed.empty() ? "" : ", ") + arg;
    } else if (t.success && !arg.empty()) {
      solution = arg;
    }
  }
  return {{"TASK_ID", t.task_id},
          {"QUERY", t.query},
          {"OUTCOME", t.success ? "success" : "failure"},
          {"STEP_COUNT", std::to_string(t.steps.size())},
          {"ACTIONS", actions.empty() ? "none" : actions},
          {"SOLUTION_KEY", solution},
          {"FAILED_KEYS", failed.empty() ? "none" : failed},
          {"ANSWER", t.prediction.empty() ? "none" : t.prediction}};
}

std::unique_ptr<Encoder> make_encoder(EncodeStrategy strategy,
                                      const EncodeSpec& params) {
  switch (strategy) {
    case EncodeStrategy::kVerbatim:
      return std::make_unique<VerbatimEncoder>(params);
    case EncodeStrategy::kSummary:
      return std::make_unique<LlmEncoder>(params, "encode_summary.v1", "encode.summary",
                                          ItemKind::kRawTrajectory);
    case EncodeStrategy::kInsight:
      return std::make_unique<InsightEncoder>(params);
    case EncodeStrategy::kWorkflow:
      return std::make_unique<LlmEncoder>(params, "encode_workflow.v1",
                                          "encode.workflow", ItemKind::kWorkflow);
    case EncodeStrategy::kTipsShortcuts:
      return std::make_unique<TipsEncoder>(params);
    case EncodeStrategy::kToolSynthesis:
      return std::make_unique<ToolEncoder>(params);
  }
  throw std::logic_error("unhandled encode strategy");
}

}  // namespace evolab
