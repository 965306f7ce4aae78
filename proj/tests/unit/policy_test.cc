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

#include <gtest/gtest.h>

#include "semwm/core/error.h"
#include "semwm/gateway/scripted.h"
#include "semwm/policy/environment.h"
#include "semwm/policy/policy.h"
#include "support/fixtures.h"
#include "support/policy_harness.h"

namespace semwm::policy {
namespace {

using gateway::ChatRequest;
using gateway::RequestTag;
using gateway::ScriptedGateway;
using gateway::ScriptEntry;
using gateway::TagIs;
using nlohmann::json;

TEST(ParseTest, ProposalList) {
  EXPECT_EQ(ParseProposalList("Sure:\n1. Open Settings\n2) Tap  Wi-Fi \n  3 . Back\nfoo\n4."),
            (std::vector<std::string>{"Open Settings", "Tap  Wi-Fi", "Back"}));
  EXPECT_TRUE(ParseProposalList("nothing").empty());
}

TEST(ParseTest, ActionLabelNormalization) {
  EXPECT_EQ(NormalizeActionLabel("  Tap   'Settings'. "), "tap 'settings'");
  EXPECT_EQ(NormalizeActionLabel("Open Settings!!"), "open settings");
  EXPECT_EQ(NormalizeActionLabel("Press (back)"), "press (back)");
}

TEST(ParseTest, ValueBlock) {
  const auto entries = ParseValueBlock(
      "Reasoning first.\n"
      "Action 2: Tap B Expected_Change: B opens Score_Reason: close. Score: 7\n"
      "**Action 1:** Tap A\nExpected_Change: A\n  opens\nScore_Reason: best\nScore: [9]\n",
      2);
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_EQ(entries[0].score, 9);
  EXPECT_EQ(entries[0].expected_change, "A opens");
  EXPECT_EQ(entries[1].score, 7);
  EXPECT_EQ(entries[1].expected_change, "B opens");
  // Last score wins inside an entry.
  EXPECT_EQ(ParseValueBlock("Action 1: x Score: 2 then Score: 5", 1)[0].score, 5);

  for (const char* bad : {"Action 1: x Score: 3", "Action 1: x\nAction 2: y Score: 3",
                          "Action 1: x Score: 11\nAction 2: y Score: 3",
                          "Action 1: x Score: 0\nAction 2: y Score: 3",
                          "Action 1: x Score: 2\nAction 1: y Score: 3",
                          "Action 3: x Score: 2\nAction 1: y Score: 3"}) {
    EXPECT_THROW(ParseValueBlock(bad, 2), ParseError) << bad;
  }
}

TEST(SelectTest, ArgmaxLowestIndexWins) {
  EXPECT_EQ(SelectAction({3, 9, 9, 1}), 1u);
  EXPECT_EQ(SelectAction({5}), 0u);
  EXPECT_EQ(SelectAction({2, 2, 2}), 0u);
  EXPECT_THROW(SelectAction({}), PreconditionError);
  EXPECT_EQ(WmModeFromString("fused"), WmMode::kFused);
  EXPECT_EQ(WmModeFromString("both"), std::nullopt);
  PolicyConfig cfg;
  cfg.k = 0;
  EXPECT_THROW(cfg.Validate(), PreconditionError);
}

TEST(FsmTest, LoadsSuiteAndWalksOracle) {
  const auto tasks = testing::LoadFsmSuite();
  ASSERT_EQ(tasks.size(), 10u);
  FsmEnvironment env(tasks);
  for (const FsmTask& t : tasks) {
    env.Reset(t.id);
    EXPECT_EQ(env.Goal(), t.goal);
    int steps = 0;
    while (auto a = env.OracleAction()) {
      env.Step(HighLevelAction{*a});
      ASSERT_LT(++steps, t.max_steps) << t.id;
    }
    EXPECT_TRUE(env.IsSuccess()) << t.id;
  }
}

TEST(FsmTest, StepSemantics) {
  FsmEnvironment env(testing::LoadFsmSuite());
  EnvObservation obs = env.Reset("wifi");
  EXPECT_EQ(obs.step, 0);
  EXPECT_EQ(obs.hints, "- Open Settings\n- Open Home menu");
  EXPECT_EQ(env.AvailableActions(), (std::vector<std::string>{"Open Settings", "Open Home menu"}));
  EXPECT_EQ(env.OracleAction(), "Open Settings");
  const std::string s0 = obs.screenshot.sha256;

  obs = env.Step(HighLevelAction{"Do a dance"});
  EXPECT_EQ(obs.step, 1);
  EXPECT_EQ(env.screen(), "s0");
  EXPECT_EQ(obs.screenshot.sha256, s0);

  obs = env.Step(HighLevelAction{"open settings."});
  EXPECT_EQ(env.screen(), "s1");
  EXPECT_NE(obs.screenshot.sha256, s0);
  EXPECT_EQ(obs.screenshot.width, 72);

  env.Step(HighLevelAction{"Open Settings menu"});
  EXPECT_EQ(env.OracleAction(), "Close menu");
  env.Step(HighLevelAction{"Close menu"});
  env.Step(HighLevelAction{"Tap Network & internet"});
  env.Step(HighLevelAction{"Tap Wi-Fi toggle"});
  EXPECT_TRUE(env.IsSuccess());
  EXPECT_EQ(env.OracleAction(), std::nullopt);
  const int at_success = env.Step(HighLevelAction{"Navigate back"}).step;
  EXPECT_EQ(env.Step(HighLevelAction{"Navigate back"}).step, at_success);
  EXPECT_EQ(env.screen(), "s3");

  EXPECT_THROW(env.Reset("nope"), PreconditionError);
  FsmEnvironment empty({});
  EXPECT_THROW(empty.Step(HighLevelAction{"x"}), PreconditionError);
}

TEST(FsmTest, RejectsInvalidTaskFiles) {
  const json good = json::parse(R"({"tasks": [{"id": "t", "goal": "g", "start": "a",
      "accept": ["b"], "screens": [{"id": "a", "hints": ""}, {"id": "b", "hints": ""}],
      "edges": [{"from": "a", "action": "go", "to": "b"}]}]})");
  EXPECT_EQ(ParseFsmTasks(good).size(), 1u);
  auto broken = [&](auto mutate) {
    json j = good;
    mutate(j["tasks"][0]);
    return j;
  };
  EXPECT_THROW(ParseFsmTasks(json::object()), ParseError);
  EXPECT_THROW(ParseFsmTasks(broken([](json& t) { t["start"] = "zz"; })), ParseError);
  EXPECT_THROW(ParseFsmTasks(broken([](json& t) { t["accept"] = {"zz"}; })), ParseError);
  EXPECT_THROW(ParseFsmTasks(broken([](json& t) { t["edges"][0]["to"] = "zz"; })),
               ParseError);
  EXPECT_THROW(ParseFsmTasks(broken([](json& t) { t.erase("goal"); })), ParseError);
  EXPECT_THROW(ParseFsmTasks(broken([](json& t) { t["max_steps"] = 0; })), ParseError);
  EXPECT_THROW(ParseFsmTasks(broken([](json& t) { t["screens"][1]["id"] = "a"; })),
               ParseError);
  EXPECT_THROW(LoadFsmTasks("/nonexistent/tasks.json"), Error);
}

TEST(HarnessTest, OracleValueSolvesEveryTask) {
  testing::PolicyHarness h(testing::LoadFsmSuite(), testing::ValueBias::kOracle);
  PolicyConfig cfg;
  const auto traces = h.RunAll(cfg);
  for (const EpisodeTrace& t : traces) {
    EXPECT_EQ(t.outcome, Outcome::kSuccess) << t.task_id << " " << t.cause;
    for (const TraceStep& s : t.steps) {
      EXPECT_EQ(s.proposals.size(), 8u);
      EXPECT_EQ(s.predictions.size(), 8u);
      EXPECT_EQ(s.scores.size(), 8u);
      EXPECT_EQ(s.action, s.proposals[s.chosen]);
      EXPECT_EQ(s.scores[s.chosen], 9);
    }
  }
  // Per step: one proposal call, k world-model calls, one value call.
  int steps = 0;
  for (const auto& t : traces) steps += static_cast<int>(t.steps.size());
  EXPECT_EQ(static_cast<int>(h.audit().Entries().size()), steps * (1 + 8 + 1));
}

TEST(HarnessTest, AdversarialValueFails) {
  testing::PolicyHarness h(testing::LoadFsmSuite(), testing::ValueBias::kAdversarial);
  PolicyConfig cfg;
  int successes = 0;
  for (const EpisodeTrace& t : h.RunAll(cfg)) {
    successes += t.outcome == Outcome::kSuccess;
    EXPECT_LE(static_cast<int>(t.steps.size()), 12);
  }
  EXPECT_LE(successes, 1);
}

TEST(HarnessTest, StepLimitIsTheSmallerOfConfigAndTask) {
  testing::PolicyHarness h(testing::LoadFsmSuite(), testing::ValueBias::kAdversarial);
  PolicyConfig cfg;
  cfg.max_steps = 3;
  const EpisodeTrace t = RunEpisode(h.env(), "wifi", cfg, h.gateways());
  EXPECT_EQ(t.outcome, Outcome::kTimeout);
  EXPECT_EQ(t.steps.size(), 3u);
}

TEST(HarnessTest, SingleProposalSkipsWorldModelAndValue) {
  testing::PolicyHarness h(testing::LoadFsmSuite(), testing::ValueBias::kOracle);
  PolicyConfig cfg;
  cfg.k = 1;
  cfg.max_steps = 4;
  const EpisodeTrace t = RunEpisode(h.env(), "wifi", cfg, h.gateways());
  ASSERT_FALSE(t.steps.empty());
  for (const TraceStep& s : t.steps) {
    EXPECT_EQ(s.proposals.size(), 1u);
    EXPECT_TRUE(s.predictions.empty());
    EXPECT_TRUE(s.scores.empty());
    EXPECT_EQ(s.chosen, 0);
  }
  for (const json& e : h.audit().Entries()) EXPECT_EQ(e["tag"], "proposal");
}

TEST(HarnessTest, FusedModeTakesPredictionsFromValueModel) {
  testing::PolicyHarness h(testing::LoadFsmSuite(), testing::ValueBias::kOracle);
  PolicyConfig cfg;
  cfg.wm_mode = WmMode::kFused;
  cfg.k = 4;
  const EpisodeTrace t = RunEpisode(h.env(), "alarm", cfg, h.gateways());
  EXPECT_EQ(t.outcome, Outcome::kSuccess);
  for (const TraceStep& s : t.steps) {
    ASSERT_EQ(s.predictions.size(), 4u);
    EXPECT_EQ(s.predictions[0], "the " + s.proposals[0] + " screen appears");
  }
  for (const json& e : h.audit().Entries()) EXPECT_NE(e["tag"], "generation");
  EXPECT_EQ(ToJson(t)["wm_mode"], "fused");
}

TEST(HarnessTest, ReplayIsByteIdentical) {
  PolicyConfig cfg;
  std::string first, second;
  for (std::string* out : {&first, &second}) {
    testing::PolicyHarness h(testing::LoadFsmSuite(), testing::ValueBias::kOracle);
    for (const auto& t : h.RunAll(cfg)) *out += ToJson(t).dump() + "\n";
  }
  EXPECT_EQ(first, second);
}

TEST(EpisodeTest, StageErrorsBecomeFailures) {
  FsmEnvironment env(testing::LoadFsmSuite());
  ScriptedGateway proposal({ScriptEntry::Reply(TagIs(RequestTag::kProposal),
                                               "1. Open Settings\n1. open settings", true)});
  ScriptedGateway unused({ScriptEntry::Reply(gateway::AnyRequest(), "unused")});
  PolicyConfig cfg;
  cfg.k = 2;
  const EpisodeTrace t = RunEpisode(env, "wifi", cfg, {proposal, unused, unused});
  EXPECT_EQ(t.outcome, Outcome::kFailure);
  EXPECT_NE(t.cause.find("1 distinct actions, expected 2"), std::string::npos);
  EXPECT_EQ(proposal.calls(), 2u);
  EXPECT_EQ(ToJson(t)["outcome"], "failure");
  EXPECT_TRUE(t.steps.empty());

  ScriptEntry failing;
  failing.fail = true;
  failing.repeat = true;
  ScriptedGateway fail({failing});
  const EpisodeTrace g = RunEpisode(env, "wifi", cfg, {fail, unused, unused});
  EXPECT_EQ(g.outcome, Outcome::kFailure);
  EXPECT_FALSE(g.cause.empty());
}

TEST(EpisodeTest, ValueRetryAndScriptErrorsPropagate) {
  FsmEnvironment env(testing::LoadFsmSuite());
  ScriptedGateway proposal({ScriptEntry::Reply(TagIs(RequestTag::kProposal),
                                               "1. Open Settings\n2. Open Home menu", true)});
  ScriptedGateway wm({ScriptEntry::Reply(TagIs(RequestTag::kGeneration), "It changes.", true)});
  ScriptedGateway value({
      ScriptEntry::Reply(TagIs(RequestTag::kValue), "Action 1: x Score: 99"),
      ScriptEntry::Reply(TagIs(RequestTag::kValue), "Action 1: x Score: 3\nAction 2: y Score: 8"),
  });
  PolicyConfig cfg;
  cfg.k = 2;
  cfg.max_steps = 2;
  // The second step runs out of value replies: a broken script is a test bug.
  EXPECT_THROW(RunEpisode(env, "wifi", cfg, {proposal, wm, value}), gateway::ScriptError);
  EXPECT_EQ(value.calls(), 3u);
  EXPECT_EQ(env.screen(), "m0");
}

}  // namespace
}  // namespace semwm::policy
