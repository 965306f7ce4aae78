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

#ifndef SEMWM_POLICY_POLICY_H_
#define SEMWM_POLICY_POLICY_H_

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semwm/gateway/gateway.h"
#include "semwm/policy/environment.h"

namespace semwm::policy {

// separate: the world model predicts each outcome, then one value call
// scores them. fused: the value call predicts and scores in one pass.
enum class WmMode { kSeparate, kFused };

std::string_view ToString(WmMode m);
std::optional<WmMode> WmModeFromString(std::string_view s);

struct PolicyConfig {
  int k = 8;
  int max_steps = 20;
  WmMode wm_mode = WmMode::kSeparate;

  void Validate() const;
};

struct PolicyGateways {
  gateway::ChatGateway& proposal;
  gateway::ChatGateway& world_model;
  gateway::ChatGateway& value;
};

// Context shared by the proposal and value prompts.
struct StepContext {
  const EnvObservation& obs;
  const std::string& goal;
  const std::vector<std::string>& history;  // actions taken so far
};

// Numbered-list items ("1. ..." or "1) ...") in order; other lines ignored.
std::vector<std::string> ParseProposalList(std::string_view text);

// Exactly k distinct proposals. A short reply is topped up from one more
// sample; still short is a ParseError.
std::vector<HighLevelAction> ProposeActions(const StepContext& ctx, int k,
                                            gateway::ChatGateway& g);

// One world-model prediction per proposal, order-aligned.
std::vector<std::string> PredictOutcomes(
    const EnvObservation& obs, const std::vector<HighLevelAction>& proposals,
    gateway::ChatGateway& g);

struct ValueEntry {
  std::string expected_change;
  int score = 0;
};

// Parses "Action N: ... Expected_Change: ... Score_Reason: ... Score: s"
// entries keyed by N and returns them ordered 1..k. Every N in 1..k must
// appear once with a score in [1, 10].
std::vector<ValueEntry> ParseValueBlock(std::string_view text, int k);

// All k scores from a single value call; a malformed reply is re-requested
// once. In fused mode `predictions` is empty and the expected changes come
// back from the value model.
std::vector<ValueEntry> ScoreOutcomes(
    const StepContext& ctx, const std::vector<HighLevelAction>& proposals,
    const std::vector<std::string>& predictions, gateway::ChatGateway& g);

// Argmax with ties going to the lowest index.
std::size_t SelectAction(const std::vector<int>& scores);

struct TraceStep {
  int step = 0;
  std::string observation;  // screenshot sha256
  std::vector<std::string> proposals;
  std::vector<std::string> predictions;
  std::vector<int> scores;
  int chosen = 0;
  std::string action;
};

enum class Outcome { kSuccess, kFailure, kTimeout };
std::string_view ToString(Outcome o);

struct EpisodeTrace {
  std::string task_id;
  std::string goal;
  int k = 0;
  WmMode wm_mode = WmMode::kSeparate;
  std::vector<TraceStep> steps;
  Outcome outcome = Outcome::kFailure;
  std::string cause;  // set for failures
};

nlohmann::json ToJson(const EpisodeTrace& t);

// Resets `env` to the task and loops propose, predict, score, select, step
// until success or min(cfg.max_steps, env.MaxSteps()) steps. With k == 1 the
// single proposal is taken directly and predictions and scores stay empty.
// Stage errors end the episode as a failure with the cause recorded.
EpisodeTrace RunEpisode(Environment& env, const std::string& task_id,
                        const PolicyConfig& cfg, const PolicyGateways& g);

}  // namespace semwm::policy

#endif  // SEMWM_POLICY_POLICY_H_
