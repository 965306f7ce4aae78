// Copyright 2026 The semwm Authors.
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

#include "semwm/policy/policy.h"

#include <regex>
#include <set>

#include <spdlog/spdlog.h>

#include "semwm/annotate/prompts.h"
#include "semwm/bench/bench.h"
#include "semwm/core/error.h"
#include "semwm/core/text.h"
#include "semwm/gateway/scripted.h"

namespace semwm::policy {
namespace {

using annotate::PromptTemplate;
using annotate::RenderTemplate;
using gateway::ChatRequest;
using gateway::ImageContent;
using gateway::RequestTag;
using nlohmann::json;

std::string Background(const StepContext& ctx) {
  std::string history;
  for (std::size_t i = 0; i < ctx.history.size(); ++i) {
    history += std::to_string(i + 1) + ". " + ctx.history[i] + "\n";
  }
  if (history.empty()) history = "None\n";
  return RenderTemplate(PromptTemplate("policy_background"),
                        {{"goal", ctx.goal},
                         {"step", std::to_string(ctx.obs.step + 1)},
                         {"hints", ctx.obs.hints.value_or("(none)")},
                         {"history", history}});
}

ChatRequest WithScreenshot(RequestTag tag, const StepContext& ctx,
                           std::string suffix) {
  return ChatRequest::UserTurn(tag, Background(ctx) + "\n" + suffix,
                               {ImageContent{"image/png", ctx.obs.png}});
}

}  // namespace

std::string_view ToString(WmMode m) {
  return m == WmMode::kFused ? "fused" : "separate";
}

std::optional<WmMode> WmModeFromString(std::string_view s) {
  if (s == "separate") return WmMode::kSeparate;
  if (s == "fused") return WmMode::kFused;
  return std::nullopt;
}

void PolicyConfig::Validate() const {
  if (k < 1) throw PreconditionError("k must be >= 1");
  if (max_steps < 1) throw PreconditionError("max_steps must be >= 1");
}

std::vector<std::string> ParseProposalList(std::string_view text) {
  static const std::regex kItem(R"(^\s*(\d+)\s*[.)]\s*(.*\S)\s*$)");
  std::vector<std::string> out;
  for (const std::string& line : SplitLines(text)) {
    std::smatch m;
    if (std::regex_match(line, m, kItem)) out.push_back(m[2].str());
  }
  return out;
}

std::vector<HighLevelAction> ProposeActions(const StepContext& ctx, int k,
                                            gateway::ChatGateway& g) {
  if (k < 1) throw PreconditionError("k must be >= 1");
  const std::string suffix =
      RenderTemplate(PromptTemplate("proposal"), {{"k", std::to_string(k)}});
  std::vector<HighLevelAction> out;
  std::set<std::string> seen;
  for (int attempt = 0; attempt < 2 && static_cast<int>(out.size()) < k;
       ++attempt) {
    const auto reply = g.Complete(WithScreenshot(RequestTag::kProposal, ctx, suffix));
    for (const std::string& item : ParseProposalList(reply.text)) {
      if (static_cast<int>(out.size()) == k) break;
      if (seen.insert(NormalizeActionLabel(item)).second) {
        out.push_back(HighLevelAction{item});
      }
    }
  }
  if (static_cast<int>(out.size()) < k) {
    throw ParseError("proposal model returned " + std::to_string(out.size()) +
                     " distinct actions, expected " + std::to_string(k));
  }
  return out;
}

std::vector<std::string> PredictOutcomes(
    const EnvObservation& obs, const std::vector<HighLevelAction>& proposals,
    gateway::ChatGateway& g) {
  if (proposals.empty()) throw PreconditionError("no proposals to predict");
  std::vector<std::string> out;
  out.reserve(proposals.size());
  for (const HighLevelAction& a : proposals) {
    out.push_back(bench::PredictTransitionDescription(obs.png, a, g));
  }
  return out;
}

std::vector<ValueEntry> ParseValueBlock(std::string_view text, int k) {
  static const std::regex kHeader(R"((^|\n)[ \t*]*Action\s+(\d+)\s*:)");
  static const std::regex kScore(R"(\bScore\s*:\s*\[?\s*(-?\d+))");
  static const std::regex kChange(
      R"(Expected_Change\s*:\s*([\s\S]*?)\s*(Score_Reason\s*:|\bScore\s*:|$))");
  const std::string s(text);
  std::vector<std::pair<int, std::size_t>> headers;  // N, offset of body
  std::vector<std::size_t> starts;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), kHeader);
       it != std::sregex_iterator(); ++it) {
    headers.emplace_back(std::stoi((*it)[2].str()),
                         static_cast<std::size_t>(it->position() + it->length()));
    starts.push_back(static_cast<std::size_t>(it->position()));
  }
  std::vector<std::optional<ValueEntry>> entries(k);
  for (std::size_t h = 0; h < headers.size(); ++h) {
    const auto [n, body_start] = headers[h];
    const std::size_t body_end = h + 1 < headers.size() ? starts[h + 1] : s.size();
    const std::string body = s.substr(body_start, body_end - body_start);
    if (n < 1 || n > k) {
      throw ParseError("value block has Action " + std::to_string(n) +
                       " outside 1.." + std::to_string(k));
    }
    if (entries[n - 1]) {
      throw ParseError("value block repeats Action " + std::to_string(n));
    }
    std::optional<int> score;
    for (auto it = std::sregex_iterator(body.begin(), body.end(), kScore);
         it != std::sregex_iterator(); ++it) {
      score = std::stoi((*it)[1].str());
    }
    if (!score) {
      throw ParseError("Action " + std::to_string(n) + " has no score");
    }
    if (*score < 1 || *score > 10) {
      throw ParseError("Action " + std::to_string(n) + " score " +
                       std::to_string(*score) + " outside [1, 10]");
    }
    ValueEntry e;
    e.score = *score;
    std::smatch m;
    if (std::regex_search(body, m, kChange)) {
      e.expected_change = NormalizeWhitespace(m[1].str());
    }
    entries[n - 1] = std::move(e);
  }
  std::vector<ValueEntry> out;
  for (int i = 0; i < k; ++i) {
    if (!entries[i]) {
      throw ParseError("value block is missing Action " + std::to_string(i + 1));
    }
    out.push_back(std::move(*entries[i]));
  }
  return out;
}

std::vector<ValueEntry> ScoreOutcomes(
    const StepContext& ctx, const std::vector<HighLevelAction>& proposals,
    const std::vector<std::string>& predictions, gateway::ChatGateway& g) {
  const bool fused = predictions.empty();
  if (proposals.empty()) throw PreconditionError("no proposals to score");
  if (!fused && predictions.size() != proposals.size()) {
    throw PreconditionError("proposals and predictions are not aligned");
  }
  std::string listing;
  for (std::size_t i = 0; i < proposals.size(); ++i) {
    listing += "Action " + std::to_string(i + 1) + ": " +
               proposals[i].description + "\n";
    if (!fused) listing += "Expected_Change: " + predictions[i] + "\n";
    listing += "\n";
  }
  const std::string suffix =
      RenderTemplate(PromptTemplate(fused ? "value_fused" : "value"),
                     {{"candidates", std::string(Trim(listing))},
                      {"k", std::to_string(proposals.size())}});
  const ChatRequest req = WithScreenshot(RequestTag::kValue, ctx, suffix);
  std::string problem;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const auto reply = g.Complete(req);
    try {
      return ParseValueBlock(reply.text, static_cast<int>(proposals.size()));
    } catch (const ParseError& e) {
      problem = e.what();
    }
  }
  throw ParseError("value reply malformed twice: " + problem);
}

std::size_t SelectAction(const std::vector<int>& scores) {
  if (scores.empty()) throw PreconditionError("no scores to select from");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

std::string_view ToString(Outcome o) {
  switch (o) {
    case Outcome::kSuccess: return "success";
    case Outcome::kTimeout: return "timeout";
    case Outcome::kFailure: break;
  }
  return "failure";
}

json ToJson(const EpisodeTrace& t) {
  json steps = json::array();
  for (const TraceStep& s : t.steps) {
    steps.push_back({{"step", s.step},
                     {"observation", s.observation},
                     {"proposals", s.proposals},
                     {"predictions", s.predictions},
                     {"scores", s.scores},
                     {"chosen", s.chosen},
                     {"action", s.action}});
  }
  json j{{"task_id", t.task_id},
         {"goal", t.goal},
         {"k", t.k},
         {"wm_mode", ToString(t.wm_mode)},
         {"steps", steps},
         {"outcome", ToString(t.outcome)}};
  if (!t.cause.empty()) j["cause"] = t.cause;
  return j;
}

EpisodeTrace RunEpisode(Environment& env, const std::string& task_id,
                        const PolicyConfig& cfg, const PolicyGateways& g) {
  cfg.Validate();
  EpisodeTrace trace;
  trace.task_id = task_id;
  trace.k = cfg.k;
  trace.wm_mode = cfg.wm_mode;
  EnvObservation obs = env.Reset(task_id);
  trace.goal = env.Goal();
  const int limit = std::min(cfg.max_steps, env.MaxSteps());
  std::vector<std::string> history;
  try {
    while (!env.IsSuccess() && static_cast<int>(trace.steps.size()) < limit) {
      const StepContext ctx{obs, trace.goal, history};
      TraceStep step;
      step.step = obs.step;
      step.observation = obs.screenshot.sha256;
      const auto proposals = ProposeActions(ctx, cfg.k, g.proposal);
      for (const auto& p : proposals) step.proposals.push_back(p.description);
      if (cfg.k > 1) {
        if (cfg.wm_mode == WmMode::kSeparate) {
          step.predictions = PredictOutcomes(obs, proposals, g.world_model);
          for (const ValueEntry& e :
               ScoreOutcomes(ctx, proposals, step.predictions, g.value)) {
            step.scores.push_back(e.score);
          }
        } else {
          for (ValueEntry& e : ScoreOutcomes(ctx, proposals, {}, g.value)) {
            step.predictions.push_back(std::move(e.expected_change));
            step.scores.push_back(e.score);
          }
        }
        step.chosen = static_cast<int>(SelectAction(step.scores));
      }
      step.action = step.proposals[step.chosen];
      history.push_back(step.action);
      trace.steps.push_back(std::move(step));
      obs = env.Step(proposals[trace.steps.back().chosen]);
    }
  } catch (const gateway::ScriptError&) {
    throw;
  } catch (const Error& e) {
    trace.outcome = Outcome::kFailure;
    trace.cause = e.what();
    spdlog::warn("episode {} failed: {}", task_id, e.what());
    return trace;
  }
  trace.outcome = env.IsSuccess() ? Outcome::kSuccess : Outcome::kTimeout;
  return trace;
}

}  // namespace semwm::policy
