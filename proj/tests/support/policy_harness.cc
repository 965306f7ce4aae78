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

#include "support/policy_harness.h"

#include <algorithm>
#include <regex>
#include <sstream>

namespace semwm::testing {
namespace {

using gateway::RequestTag;
using gateway::ScriptEntry;
using gateway::TagIs;

const std::vector<std::string> kDistractors = {
    "Scroll down",       "Open notifications", "Wait",       "Press home",
    "Long press screen", "Swipe left",         "Swipe right", "Zoom in",
    "Rotate screen",     "Open recent apps"};

int RequestedCount(const std::string& prompt) {
  std::smatch m;
  static const std::regex kCount(R"(Propose exactly (\d+))");
  return std::regex_search(prompt, m, kCount) ? std::stoi(m[1].str()) : 1;
}

}  // namespace

std::vector<std::string> PromptElements(const std::string& prompt) {
  const std::string marker = "current screen are:\n";
  std::vector<std::string> out;
  auto pos = prompt.find(marker);
  if (pos == std::string::npos) return out;
  std::istringstream in(prompt.substr(pos + marker.size()));
  std::string line;
  while (std::getline(in, line) && line.rfind("- ", 0) == 0) {
    out.push_back(line.substr(2));
  }
  return out;
}

std::vector<std::pair<int, std::string>> PromptCandidates(const std::string& prompt) {
  const auto begin = prompt.find("The proposed actions");
  const auto end = prompt.find("Now based on");
  std::vector<std::pair<int, std::string>> out;
  if (begin == std::string::npos || end == std::string::npos) return out;
  const std::string section = prompt.substr(begin, end - begin);
  static const std::regex kLine(R"(Action (\d+): ([^\n]*))");
  for (auto it = std::sregex_iterator(section.begin(), section.end(), kLine);
       it != std::sregex_iterator(); ++it) {
    out.emplace_back(std::stoi((*it)[1].str()), (*it)[2].str());
  }
  return out;
}

PolicyHarness::PolicyHarness(std::vector<policy::FsmTask> tasks, ValueBias bias)
    : env_(tasks) {
  for (const auto& t : tasks) task_ids_.push_back(t.id);

  // Real elements in reverse order so the useful action is rarely first,
  // padded with actions that do not exist on the screen.
  auto propose = [](const gateway::ChatRequest& req) {
    const std::string prompt = req.AllText();
    std::vector<std::string> items = PromptElements(prompt);
    std::reverse(items.begin(), items.end());
    for (const std::string& d : kDistractors) items.push_back(d);
    const int k = RequestedCount(prompt);
    std::string out;
    for (int i = 0; i < k && i < static_cast<int>(items.size()); ++i) {
      out += std::to_string(i + 1) + ". " + items[i] + "\n";
    }
    return out;
  };
  proposal_ = std::make_unique<gateway::ScriptedGateway>(
      std::vector<ScriptEntry>{ScriptEntry::Dynamic(TagIs(RequestTag::kProposal), propose)},
      gateway::GatewayConfig{}, &audit_);

  auto predict = [](const gateway::ChatRequest& req) {
    static const std::regex kAction(R"(The action is ([^\n]*))");
    std::smatch m;
    const std::string prompt = req.AllText();
    const std::string action =
        std::regex_search(prompt, m, kAction) ? m[1].str() : "the action";
    return "After '" + action + "' the screen updates accordingly.";
  };
  world_model_ = std::make_unique<gateway::ScriptedGateway>(
      std::vector<ScriptEntry>{
          ScriptEntry::Dynamic(TagIs(RequestTag::kGeneration), predict)},
      gateway::GatewayConfig{}, &audit_);

  policy::FsmEnvironment* env = &env_;
  auto score = [env, bias](const gateway::ChatRequest& req) {
    const auto oracle = env->OracleAction();
    const std::string target =
        oracle ? policy::NormalizeActionLabel(*oracle) : std::string();
    std::string out;
    for (const auto& [n, label] : PromptCandidates(req.AllText())) {
      const bool is_oracle = policy::NormalizeActionLabel(label) == target;
      int s = is_oracle ? 9 : 4;
      if (bias == ValueBias::kAdversarial) s = is_oracle ? 1 : 6;
      out += "Action " + std::to_string(n) + ": " + label +
             " Expected_Change: the " + label + " screen appears" +
             " Score_Reason: scripted Score: " + std::to_string(s) + "\n\n";
    }
    return out;
  };
  value_ = std::make_unique<gateway::ScriptedGateway>(
      std::vector<ScriptEntry>{ScriptEntry::Dynamic(TagIs(RequestTag::kValue), score)},
      gateway::GatewayConfig{}, &audit_);
}

std::vector<policy::EpisodeTrace> PolicyHarness::RunAll(
    const policy::PolicyConfig& cfg) {
  std::vector<policy::EpisodeTrace> out;
  for (const std::string& id : task_ids_) {
    out.push_back(policy::RunEpisode(env_, id, cfg, gateways()));
  }
  return out;
}

}  // namespace semwm::testing
