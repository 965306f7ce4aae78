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

#include <random>

#include <gtest/gtest.h>

#include "semwm/bench/bench.h"
#include "semwm/gateway/audit.h"
#include "semwm/gateway/scripted.h"
#include "support/fixtures.h"
#include "support/judge_corpus.h"

namespace semwm::bench {
namespace {

using gateway::AuditLog;
using gateway::ChatRequest;
using gateway::PromptContains;
using gateway::RequestTag;
using gateway::ScriptedGateway;
using gateway::ScriptEntry;
using gateway::TagIs;
using nlohmann::json;

std::string JudgeReply(int a, int c, int r) {
  return "----Begin of response----\nAccuracy: " + std::to_string(a) +
         "\nCompleteness: " + std::to_string(c) + "\nRelevance: " +
         std::to_string(r) + "\nOverall Score: " + std::to_string(a + c + r) +
         "\n----End of response----";
}

TEST(JudgeBlockTest, Corpus) {
  for (const testing::JudgeCase& c : testing::JudgeCorpus()) {
    SCOPED_TRACE(c.name);
    if (c.expected) {
      const ParsedJudgment parsed = ParseJudgeBlock(c.text);
      EXPECT_EQ(parsed.judgment, *c.expected);
      EXPECT_EQ(static_cast<int>(parsed.warnings.size()), c.warnings);
    } else {
      EXPECT_THROW(ParseJudgeBlock(c.text), ParseError);
    }
  }
}

TEST(JudgeBlockTest, OverallIsAlwaysComponentSum) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int a = rng() % 6, c = rng() % 6, r = rng() % 6;
    const int claimed = rng() % 16;
    const std::string text = "----Begin of response----\nAccuracy: " + std::to_string(a) +
                             "\nCompleteness: " + std::to_string(c) +
                             "\nRelevance: " + std::to_string(r) +
                             "\nOverall Score: " + std::to_string(claimed) +
                             "\n----End of response----";
    const ParsedJudgment p = ParseJudgeBlock(text);
    EXPECT_EQ(p.judgment.overall, a + c + r);
    const int zeros = (a == 0) + (c == 0) + (r == 0);
    EXPECT_EQ(static_cast<int>(p.warnings.size()), zeros + (claimed != a + c + r));
  }
}

TEST(JudgeBlockTest, JsonRoundTrip) {
  const GenJudgment g{4, 3, 5, 12, "why"};
  const json j = g;
  EXPECT_EQ(j["overall"], 12);
  EXPECT_EQ(j.get<GenJudgment>(), g);
}

// Per-category and overall means recomputed with plain double accumulation.
struct OracleMeans {
  double a = 0, c = 0, r = 0, overall = 0;
  std::map<Category, std::pair<double, int>> per;
};

OracleMeans Oracle(const std::vector<std::pair<GenJudgment, Category>>& js) {
  OracleMeans m;
  for (const auto& [g, cat] : js) {
    m.a += g.accuracy;
    m.c += g.completeness;
    m.r += g.relevance;
    m.per[cat].first += g.accuracy + g.completeness + g.relevance;
    m.per[cat].second += 1;
  }
  const double n = static_cast<double>(js.size());
  m.a /= n;
  m.c /= n;
  m.r /= n;
  m.overall = m.a + m.c + m.r;
  return m;
}

TEST(AggregateGenTest, MatchesOracleAndIsOrderIndependent) {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<GenJudgment, Category>> js;
    const int n = 1 + static_cast<int>(rng() % 60);
    for (int i = 0; i < n; ++i) {
      const int a = 1 + rng() % 5, c = 1 + rng() % 5, r = 1 + rng() % 5;
      js.push_back({{a, c, r, a + c + r, ""}, kAllCategories[rng() % std::size(kAllCategories)]});
    }
    const GenReport report = AggregateGen(js);
    const OracleMeans m = Oracle(js);
    EXPECT_NEAR(report.accuracy, m.a, 1e-9);
    EXPECT_NEAR(report.completeness, m.c, 1e-9);
    EXPECT_NEAR(report.relevance, m.r, 1e-9);
    EXPECT_NEAR(report.overall, m.overall, 1e-9);
    EXPECT_EQ(report.count, n);
    for (Category c : kAllCategories) {
      auto it = m.per.find(c);
      if (it == m.per.end()) {
        EXPECT_FALSE(report.per_category.at(c).has_value());
      } else {
        EXPECT_NEAR(*report.per_category.at(c), it->second.first / it->second.second, 1e-9);
      }
    }
    std::shuffle(js.begin(), js.end(), rng);
    const GenReport shuffled = AggregateGen(js);
    EXPECT_EQ(shuffled.overall, report.overall);
    EXPECT_EQ(shuffled.per_category, report.per_category);
  }
  EXPECT_THROW(AggregateGen({}), PreconditionError);
}

TEST(AggregateGenTest, OverallEqualsSumOfBreakdownMeans) {
  // 100 judgments whose component means are 4.04, 3.42 and 4.38.
  std::vector<std::pair<GenJudgment, Category>> js;
  for (int i = 0; i < 100; ++i) {
    const int a = i < 4 ? 5 : 4;
    const int c = i < 42 ? 4 : 3;
    const int r = i < 38 ? 5 : 4;
    js.push_back({{a, c, r, a + c + r, ""}, Category::kGeneral});
  }
  const GenReport report = AggregateGen(js);
  EXPECT_EQ(Format2(report.accuracy), "4.04");
  EXPECT_EQ(Format2(report.completeness), "3.42");
  EXPECT_EQ(Format2(report.relevance), "4.38");
  EXPECT_EQ(Format2(report.overall), "11.84");
  const json j = ToJson(report);
  EXPECT_EQ(j["overall"], 11.84);
  EXPECT_EQ(j["breakdown"]["completeness"], 3.42);
  EXPECT_EQ(j["per_category"]["general"], 11.84);
  EXPECT_TRUE(j["per_category"]["web_shopping"].is_null());
  EXPECT_EQ(j["task"], "generation");
}

TEST(AggregateQaTest, CountsAndFormatting) {
  std::vector<QAResult> rs;
  for (int i = 0; i < 1787; ++i) {
    QAResult r;
    r.qa_id = std::to_string(i);
    r.correct = i < 1486;
    r.answer = i < 1700 ? std::optional<Answer>(Answer::kYes) : std::nullopt;
    rs.push_back(r);
  }
  const QaReport report = AggregateQa(rs);
  EXPECT_EQ(report.correct, 1486);
  EXPECT_EQ(report.total, 1787);
  EXPECT_EQ(report.unparseable, 87);
  EXPECT_NEAR(report.accuracy, 100.0 * 1486 / 1787, 1e-12);
  EXPECT_EQ(Format2(report.accuracy), "83.16");
  const json j = ToJson(report);
  EXPECT_EQ(j["accuracy_text"], "83.16");
  EXPECT_EQ(j["count"], 1787);
  EXPECT_THROW(AggregateQa({}), PreconditionError);
  EXPECT_EQ(json(rs.back())["answer"], "unparseable");
}

TEST(RoundingTest, TwoDecimals) {
  EXPECT_EQ(Round2(11.844), 11.84);
  EXPECT_EQ(Round2(12.386), 12.39);
  EXPECT_EQ(Format2(0.0), "0.00");
  EXPECT_EQ(Format2(12.5), "12.50");
}

class BenchRunTest : public ::testing::Test {
 protected:
  ImageStore store_;
};

TEST_F(BenchRunTest, PredictorsAttachOnlyTheBeforeImage) {
  const Transition t = testing::MakeTransition("t1", 1, store_);
  AuditLog audit;
  std::vector<ChatRequest> seen;
  ScriptedGateway g({ScriptEntry::Dynamic(gateway::AnyRequest(),
                                          [&](const ChatRequest& r) {
                                            seen.push_back(r);
                                            return std::string(
                                                r.tag == RequestTag::kQa ? "No." : "It opens.");
                                          })},
                    {}, &audit);
  const auto before = store_.Load(t.before);
  EXPECT_EQ(PredictTransitionDescription(before, *t.high_action, g), "It opens.");
  EXPECT_EQ(PredictNextStateAnswer(before, *t.high_action, "Is it open?", g), Answer::kNo);
  ASSERT_EQ(seen.size(), 2u);
  for (const ChatRequest& r : seen) {
    ASSERT_EQ(r.ImageCount(), 1u);
    EXPECT_EQ(r.messages[0].images[0].bytes, before);
  }
  EXPECT_NE(seen[0].AllText().find("The action is " + t.high_action->description),
            std::string::npos);
  EXPECT_NE(seen[1].AllText().find("The question is Is it open?"), std::string::npos);
  const auto entries = audit.Entries();
  EXPECT_EQ(entries[0]["tag"], "generation");
  EXPECT_EQ(entries[1]["tag"], "qa");
  EXPECT_EQ(entries[1]["temperature"], 0.0);
}

TEST_F(BenchRunTest, JudgeRetriesOnceThenFails) {
  const Transition t = testing::MakeTransition("t1", 1, store_);
  ScriptedGateway once({ScriptEntry::Reply(TagIs(RequestTag::kJudge), "no block"),
                        ScriptEntry::Reply(TagIs(RequestTag::kJudge), JudgeReply(4, 4, 4))});
  EXPECT_EQ(JudgeGeneration(t, "p", "ref", once, store_).judgment.overall, 12);

  std::vector<int> images;
  ScriptedGateway twice({ScriptEntry::Dynamic(TagIs(RequestTag::kJudge),
                                              [&](const ChatRequest& r) {
                                                images.push_back(
                                                    static_cast<int>(r.ImageCount()));
                                                return std::string("Accuracy: 9");
                                              })});
  EXPECT_THROW(JudgeGeneration(t, "p", "ref", twice, store_), JudgmentError);
  EXPECT_EQ(images, (std::vector<int>{2, 2}));
}

std::vector<ChangeDescription> Selected(const std::vector<Transition>& ts) {
  std::vector<ChangeDescription> out;
  for (const Transition& t : ts) {
    out.push_back({t.id, "other " + t.id, 0, false});
    out.push_back({t.id, "reference " + t.id, 1, true});
  }
  return out;
}

TEST_F(BenchRunTest, GenEvalExcludesFailedSamples) {
  auto ts = testing::MakeTransitions(6, store_);
  std::reverse(ts.begin(), ts.end());
  ScriptedGateway model({ScriptEntry::Dynamic(TagIs(RequestTag::kGeneration),
                                              [](const ChatRequest&) {
                                                return std::string("prediction");
                                              })});
  // t002 gets two malformed blocks; the rest score by the reference text.
  ScriptedGateway judge({ScriptEntry::Dynamic(TagIs(RequestTag::kJudge),
                                              [](const ChatRequest& r) {
                                                const std::string p = r.AllText();
                                                if (p.find("reference t002") != std::string::npos) {
                                                  return std::string("garbage");
                                                }
                                                const int a =
                                                    p.find("reference t000") != std::string::npos ? 5 : 3;
                                                return JudgeReply(a, 3, 3);
                                              })});
  const GenEval eval = RunGenEval(ts, Selected(ts), model, judge, store_, "m1", 3);
  ASSERT_EQ(eval.samples.size(), 6u);
  EXPECT_EQ(eval.samples[0].transition_id, "t000");
  EXPECT_EQ(eval.samples[2].transition_id, "t002");
  EXPECT_FALSE(eval.samples[2].judgment.has_value());
  EXPECT_NE(eval.samples[2].error.find("malformed twice"), std::string::npos);
  EXPECT_EQ(eval.report.count, 5);
  EXPECT_EQ(eval.report.excluded, 1);
  EXPECT_DOUBLE_EQ(eval.report.accuracy, (5 + 3 * 4) / 5.0);
  EXPECT_EQ(ToJson(eval.samples[2]).count("judgment"), 0u);
  EXPECT_EQ(ToJson(eval.samples[0])["model"], "m1");
}

TEST_F(BenchRunTest, GenEvalPreconditions) {
  auto ts = testing::MakeTransitions(2, store_);
  ScriptedGateway g({ScriptEntry::Reply(gateway::AnyRequest(), "unused")});
  auto descriptions = Selected(ts);
  descriptions.pop_back();
  EXPECT_THROW(RunGenEval(ts, descriptions, g, g, store_, "m", 1), PreconditionError);
  descriptions = Selected(ts);
  descriptions[0].selected = true;
  EXPECT_THROW(RunGenEval(ts, descriptions, g, g, store_, "m", 1), PreconditionError);
  ts[1].high_action.reset();
  EXPECT_THROW(RunGenEval(ts, Selected(ts), g, g, store_, "m", 1), PreconditionError);
  EXPECT_EQ(g.calls(), 0u);
}

TEST_F(BenchRunTest, QaEvalScoresAnswers) {
  const auto ts = testing::MakeTransitions(3, store_);
  std::vector<QAPair> qas;
  for (const Transition& t : ts) {
    for (int i = 0; i < 4; ++i) {
      QAPair qa;
      qa.id = t.id + "/qa" + std::to_string(i);
      qa.transition_id = t.id;
      qa.question = "Question " + std::to_string(i) + "?";
      qa.answer = i % 2 == 0 ? Answer::kYes : Answer::kNo;
      qas.push_back(qa);
    }
  }
  // Always "Yes", except question 3 gets an unparseable reply.
  ScriptedGateway model({ScriptEntry::Dynamic(TagIs(RequestTag::kQa), [](const ChatRequest& r) {
    return std::string(r.AllText().find("Question 3?") != std::string::npos ? "Unsure"
                                                                             : "Yes");
  })});
  const QaEval eval = RunQaEval(ts, qas, model, store_, 2);
  EXPECT_EQ(eval.report.total, 12);
  EXPECT_EQ(eval.report.correct, 6);
  EXPECT_EQ(eval.report.unparseable, 3);
  EXPECT_EQ(eval.results[0].qa_id, "t000/qa0");
  EXPECT_TRUE(eval.results[0].correct);

  qas[0].transition_id = "nope";
  EXPECT_THROW(RunQaEval(ts, qas, model, store_, 1), PreconditionError);
}

}  // namespace
}  // namespace semwm::bench
