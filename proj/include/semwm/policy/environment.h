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

#ifndef SEMWM_POLICY_ENVIRONMENT_H_
#define SEMWM_POLICY_ENVIRONMENT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semwm/core/types.h"

namespace semwm::policy {

struct EnvObservation {
  Screenshot screenshot;
  std::vector<std::uint8_t> png;
  std::optional<std::string> hints;  // accessibility-style element list
  int step = 0;
};

// Device the agent acts on. A step after success must not change state.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual EnvObservation Reset(const std::string& task_id) = 0;
  virtual EnvObservation Step(const HighLevelAction& action) = 0;
  virtual EnvObservation Step(const LowLevelAction& action) {
    return Step(HighLevelAction{DescribeLowLevelAction(action)});
  }
  virtual bool IsSuccess() const = 0;
  virtual int MaxSteps() const = 0;
  virtual std::string Goal() const = 0;
};

// Task file schema (JSON):
//   {"tasks": [{"id", "goal", "start", "accept": [screen ids], "max_steps",
//               "screens": [{"id", "hints", "width"?, "height"?}],
//               "edges": [{"from", "action", "to"}]}]}
struct FsmScreen {
  std::string id;
  std::string hints;
  int width = 72;
  int height = 128;
};

struct FsmEdge {
  std::string from;
  std::string action;
  std::string to;
};

struct FsmTask {
  std::string id;
  std::string goal;
  std::string start;
  std::vector<std::string> accept;
  int max_steps = 20;
  std::map<std::string, FsmScreen> screens;
  std::vector<FsmEdge> edges;
};

// Parses and validates tasks: every referenced screen must exist.
std::vector<FsmTask> ParseFsmTasks(const nlohmann::json& doc);
std::vector<FsmTask> LoadFsmTasks(const std::filesystem::path& path);

// Lower-cases, collapses whitespace and drops trailing punctuation so that
// "Tap 'Settings'." matches the edge label "tap 'settings'".
std::string NormalizeActionLabel(std::string_view text);

// Finite-state mock app. Screens are nodes and actions labeled edges; the
// task succeeds on reaching an accepting screen. An action matching no edge
// leaves the screen unchanged but still consumes a step. Each screen renders
// as a deterministic solid-color PNG.
class FsmEnvironment : public Environment {
 public:
  explicit FsmEnvironment(std::vector<FsmTask> tasks);

  EnvObservation Reset(const std::string& task_id) override;
  EnvObservation Step(const HighLevelAction& action) override;
  using Environment::Step;
  bool IsSuccess() const override;
  int MaxSteps() const override;
  std::string Goal() const override;

  const FsmTask& task() const;
  const std::string& screen() const { return screen_; }
  // Labels of the edges leaving the current screen, in file order.
  std::vector<std::string> AvailableActions() const;
  // First action on a shortest path to an accepting screen (BFS over edges
  // in file order); nullopt when none is reachable or already accepted.
  std::optional<std::string> OracleAction() const;

 private:
  EnvObservation Observe() const;

  std::map<std::string, FsmTask> tasks_;
  const FsmTask* task_ = nullptr;
  std::string screen_;
  int step_ = 0;
};

}  // namespace semwm::policy

#endif  // SEMWM_POLICY_ENVIRONMENT_H_
