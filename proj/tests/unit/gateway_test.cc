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

#include <chrono>
#include <cstdlib>
#include <deque>
#include <mutex>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "semwm/core/files.h"
#include "semwm/core/hash.h"
#include "semwm/core/jsonl.h"
#include "semwm/gateway/audit.h"
#include "semwm/gateway/gateway.h"
#include "semwm/gateway/http_gateway.h"
#include "semwm/gateway/rate_limiter.h"
#include "semwm/gateway/scripted.h"
#include "support/fixtures.h"

namespace semwm::gateway {
namespace {

using nlohmann::json;
using namespace std::chrono_literals;

std::string OkBody(const std::string& text) {
  return json{{"choices", {{{"message", {{"role", "assistant"}, {"content", text}}}}}},
              {"usage", {{"prompt_tokens", 3}, {"completion_tokens", 4}}}}
      .dump();
}

ChatRequest SampleRequest(RequestTag tag, int images = 1) {
  std::vector<ImageContent> content;
  for (int i = 0; i < images; ++i) {
    content.push_back({"image/png", {static_cast<std::uint8_t>(i), 1, 2}});
  }
  return ChatRequest::UserTurn(tag, "describe", std::move(content));
}

// Replays a fixed sequence of transport results and records what was posted.
class FakeTransport : public Transport {
 public:
  explicit FakeTransport(std::deque<TransportResult> results)
      : results_(std::move(results)) {}

  TransportResult Post(const std::string& body) override {
    std::lock_guard<std::mutex> lock(mu_);
    bodies.push_back(body);
    if (results_.empty()) return {0, "", "no more results"};
    TransportResult r = results_.front();
    results_.pop_front();
    return r;
  }

  std::vector<std::string> bodies;

 private:
  std::mutex mu_;
  std::deque<TransportResult> results_;
};

struct RecordingSleeper {
  std::vector<std::chrono::nanoseconds> sleeps;
  HttpGateway::Sleeper fn() {
    return [this](std::chrono::nanoseconds d) { sleeps.push_back(d); };
  }
};

TEST(TemperatureTest, QaDefaultsToZeroOthersUnset) {
  GatewayConfig cfg;
  EXPECT_EQ(ResolveTemperature(SampleRequest(RequestTag::kQa), cfg), 0.0);
  EXPECT_EQ(ResolveTemperature(SampleRequest(RequestTag::kGeneration), cfg),
            std::nullopt);
  cfg.temperature_overrides[RequestTag::kJudge] = 0.3;
  EXPECT_EQ(ResolveTemperature(SampleRequest(RequestTag::kJudge), cfg), 0.3);
  ChatRequest explicit_req = SampleRequest(RequestTag::kQa);
  explicit_req.temperature = 0.7;
  EXPECT_EQ(ResolveTemperature(explicit_req, cfg), 0.7);
}

TEST(WirePayloadTest, InlineAndAuditForms) {
  GatewayConfig cfg;
  cfg.model = "m1";
  cfg.max_output_tokens = 77;
  const ChatRequest req = SampleRequest(RequestTag::kQa, 2);
  const json wire = BuildWirePayload(req, cfg, true);
  EXPECT_EQ(wire["model"], "m1");
  EXPECT_EQ(wire["max_tokens"], 77);
  EXPECT_EQ(wire["temperature"], 0.0);
  const json& content = wire["messages"][0]["content"];
  ASSERT_EQ(content.size(), 3u);
  EXPECT_EQ(content[0]["text"], "describe");
  EXPECT_EQ(content[1]["image_url"]["url"],
            "data:image/png;base64," + Base64Encode(req.messages[0].images[0].bytes));

  const json audit = BuildWirePayload(req, cfg, false);
  EXPECT_EQ(audit["messages"][0]["content"][2]["image_url"]["url"],
            "sha256:" + Sha256Hex(req.messages[0].images[1].bytes));
  EXPECT_FALSE(BuildWirePayload(SampleRequest(RequestTag::kGeneration), cfg, false)
                   .contains("temperature"));
  EXPECT_THROW(BuildWirePayload(ChatRequest{}, cfg, false), PreconditionError);
}

TEST(WireResponseTest, ParsesTextAndUsage) {
  const ChatResponse r = ParseWireResponse(OkBody("hello"));
  EXPECT_EQ(r.text, "hello");
  EXPECT_EQ(r.usage.total_tokens, 7);

  const json parts = {{"choices",
                       {{{"message",
                          {{"content",
                            {{{"type", "text"}, {"text", "a"}},
                             {{"type", "text"}, {"text", "b"}}}}}}}}}};
  EXPECT_EQ(ParseWireResponse(parts.dump()).text, "ab");

  for (const std::string bad : {"not json", "{}", R"({"choices":[]})",
                                R"({"choices":[{"message":{"content":""}}]})"}) {
    try {
      ParseWireResponse(bad);
      FAIL() << bad;
    } catch (const GatewayError& e) {
      EXPECT_EQ(e.kind(), GatewayError::Kind::kMissingText);
    }
  }
}

TEST(ConfigResolutionTest, SectionsThenEnvironment) {
  const Config config = Config::FromString(
      "[gateway]\nendpoint = http://base/v1\nmodel = base-model\n"
      "retry_limit = 2\nretry_backoff_ms = 10, 20\ntemperature_judge = 0.2\n"
      "[gateway:judge]\nmodel = judge-model\n");
  ::unsetenv("SEMWM_ENDPOINT");
  ::unsetenv("SEMWM_JUDGE_MODEL");
  GatewayConfig judge = ResolveGatewayConfig(config, "judge");
  EXPECT_EQ(judge.endpoint, "http://base/v1");
  EXPECT_EQ(judge.model, "judge-model");
  EXPECT_EQ(judge.retry_limit, 2);
  EXPECT_EQ(judge.retry_backoff,
            (std::vector<std::chrono::milliseconds>{10ms, 20ms}));
  EXPECT_EQ(judge.temperature_overrides.at(RequestTag::kJudge), 0.2);
  EXPECT_EQ(ResolveGatewayConfig(config, "model").model, "base-model");

  ::setenv("SEMWM_JUDGE_MODEL", "env-model", 1);
  EXPECT_EQ(ResolveGatewayConfig(config, "judge").model, "env-model");
  EXPECT_EQ(ResolveGatewayConfig(config, "model").model, "base-model");
  ::unsetenv("SEMWM_JUDGE_MODEL");

  EXPECT_THROW(ResolveGatewayConfig(Config::FromString("[gateway]\nretry_limit = -1\n")),
               PreconditionError);
  EXPECT_THROW(
      ResolveGatewayConfig(Config::FromString("[gateway]\nretry_backoff_ms = 1,x\n")),
      ParseError);
}

TEST(ConfigResolutionTest, ExampleConfigLoads) {
  for (const char* var : {"SEMWM_ENDPOINT", "SEMWM_MODEL", "SEMWM_JUDGE_MODEL"}) {
    ::unsetenv(var);
  }
  const Config config =
      Config::Load(std::filesystem::path(SEMWM_SOURCE_DIR) / "config/semwm.example.ini");
  const GatewayConfig judge = ResolveGatewayConfig(config, "judge");
  EXPECT_EQ(judge.model, "judge-vlm");
  EXPECT_EQ(judge.endpoint, "http://localhost:8000/v1/chat/completions");
  EXPECT_EQ(judge.retry_backoff.size(), 3u);
  EXPECT_EQ(ResolveGatewayConfig(config, "proposal").model, "default-vlm");
  EXPECT_TRUE(judge.temperature_overrides.empty());
}

TEST(HttpGatewayTest, RetriesTransientFailuresWithBackoff) {
  GatewayConfig cfg;
  cfg.retry_backoff = {5ms, 50ms};
  auto transport = std::make_unique<FakeTransport>(std::deque<TransportResult>{
      {0, "", "connection refused"}, {503, "busy", ""}, {429, "slow", ""},
      {200, OkBody("done"), ""}});
  FakeTransport* fake = transport.get();
  AuditLog audit;
  RecordingSleeper sleeper;
  HttpGateway g(cfg, std::move(transport), &audit, sleeper.fn());
  const ChatResponse r = g.Complete(SampleRequest(RequestTag::kGeneration));
  EXPECT_EQ(r.text, "done");
  EXPECT_EQ(r.attempts, 4);
  EXPECT_EQ(fake->bodies.size(), 4u);
  EXPECT_EQ(sleeper.sleeps, (std::vector<std::chrono::nanoseconds>{5ms, 50ms, 50ms}));
  const auto entries = audit.Entries();
  ASSERT_EQ(entries.size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(entries[i]["attempt"], i + 1);
}

TEST(HttpGatewayTest, ExhaustsRetries) {
  GatewayConfig cfg;
  cfg.retry_limit = 2;
  cfg.retry_backoff = {};
  auto transport = std::make_unique<FakeTransport>(std::deque<TransportResult>{
      {500, "", ""}, {500, "", ""}, {500, "", ""}, {200, OkBody("late"), ""}});
  FakeTransport* fake = transport.get();
  RecordingSleeper sleeper;
  HttpGateway g(cfg, std::move(transport), nullptr, sleeper.fn());
  try {
    g.Complete(SampleRequest(RequestTag::kJudge));
    FAIL();
  } catch (const GatewayError& e) {
    EXPECT_EQ(e.kind(), GatewayError::Kind::kRetriesExhausted);
  }
  EXPECT_EQ(fake->bodies.size(), 3u);
  EXPECT_TRUE(sleeper.sleeps.empty());
}

TEST(HttpGatewayTest, ClientErrorsAreNotRetried) {
  for (auto [status, kind] :
       {std::pair{401, GatewayError::Kind::kAuthentication},
        std::pair{403, GatewayError::Kind::kAuthentication},
        std::pair{400, GatewayError::Kind::kRejected},
        std::pair{404, GatewayError::Kind::kRejected}}) {
    auto transport = std::make_unique<FakeTransport>(
        std::deque<TransportResult>{{status, "nope", ""}, {200, OkBody("x"), ""}});
    FakeTransport* fake = transport.get();
    HttpGateway g(GatewayConfig{}, std::move(transport), nullptr,
                  [](std::chrono::nanoseconds) {});
    try {
      g.Complete(SampleRequest(RequestTag::kQa));
      FAIL() << status;
    } catch (const GatewayError& e) {
      EXPECT_EQ(e.kind(), kind) << status;
    }
    EXPECT_EQ(fake->bodies.size(), 1u);
  }
}

TEST(HttpGatewayTest, SendsInlineImagesAndQaTemperature) {
  auto transport = std::make_unique<FakeTransport>(
      std::deque<TransportResult>{{200, OkBody("Yes"), ""}});
  FakeTransport* fake = transport.get();
  HttpGateway g(GatewayConfig{}, std::move(transport));
  g.Complete(SampleRequest(RequestTag::kQa, 1));
  const json sent = json::parse(fake->bodies.at(0));
  EXPECT_EQ(sent["temperature"], 0.0);
  EXPECT_TRUE(sent["messages"][0]["content"][1]["image_url"]["url"]
                  .get<std::string>()
                  .starts_with("data:image/png;base64,"));
}

TEST(TokenBucketTest, SpacesRequestsAtConfiguredRate) {
  TokenBucket bucket(60.0);  // one per second, burst 1
  const auto t0 = TokenBucket::Clock::time_point{} + 100s;
  EXPECT_EQ(bucket.Reserve(t0), TokenBucket::Clock::duration::zero());
  EXPECT_NEAR(std::chrono::duration<double>(bucket.Reserve(t0)).count(), 1.0, 1e-6);
  EXPECT_NEAR(std::chrono::duration<double>(bucket.Reserve(t0)).count(), 2.0, 1e-6);
  EXPECT_EQ(bucket.Reserve(t0 + 10s), TokenBucket::Clock::duration::zero());
  TokenBucket off(0.0);
  EXPECT_FALSE(off.enabled());
  EXPECT_EQ(off.Reserve(t0), TokenBucket::Clock::duration::zero());
}

TEST(ScriptedGatewayTest, MatchesInOrderAndReportsLeftovers) {
  ScriptedGateway g({
      ScriptEntry::Reply(TagIs(RequestTag::kQa), "first"),
      ScriptEntry::Reply(TagIs(RequestTag::kQa), "second"),
      ScriptEntry::Reply(PromptContains("special"), "sticky", true),
  });
  EXPECT_EQ(g.Complete(SampleRequest(RequestTag::kQa)).text, "first");
  EXPECT_EQ(g.Complete(SampleRequest(RequestTag::kQa)).text, "second");
  EXPECT_EQ(g.remaining(), 0u);
  auto special = ChatRequest::UserTurn(RequestTag::kJudge, "a special prompt");
  EXPECT_EQ(g.Complete(special).text, "sticky");
  EXPECT_EQ(g.Complete(special).text, "sticky");
  EXPECT_EQ(g.calls(), 4u);
  try {
    g.Complete(SampleRequest(RequestTag::kQa));
    FAIL();
  } catch (const ScriptError& e) {
    EXPECT_NE(std::string(e.what()).find("exhausted"), std::string::npos);
  }

  ScriptedGateway h({ScriptEntry::Reply(TagIs(RequestTag::kJudge), "j")});
  try {
    h.Complete(SampleRequest(RequestTag::kQa));
    FAIL();
  } catch (const ScriptError& e) {
    EXPECT_NE(std::string(e.what()).find("unmatched"), std::string::npos);
  }
}

TEST(ScriptedGatewayTest, FailEntriesRaiseGatewayErrors) {
  ScriptEntry fail = ScriptEntry::Reply(AnyRequest(), "");
  fail.fail = true;
  ScriptedGateway g({fail, ScriptEntry::Reply(AnyRequest(), "ok")});
  EXPECT_THROW(g.Complete(SampleRequest(RequestTag::kQa)), GatewayError);
  EXPECT_EQ(g.Complete(SampleRequest(RequestTag::kQa)).text, "ok");
}

TEST(ScriptedGatewayTest, LoadsJsonlScripts) {
  testing::TempDir dir;
  WriteFileText(dir / "s.jsonl",
                R"({"label":"a","tag":"qa","response":"Yes"})" "\n"
                R"({"contains":"judge me","response":"Score","repeat":true})" "\n"
                R"({"tag":"value","fail":true})" "\n");
  AuditLog audit;
  ScriptedGateway g(LoadScript(dir / "s.jsonl"), GatewayConfig{}, &audit);
  EXPECT_EQ(g.Complete(SampleRequest(RequestTag::kQa)).text, "Yes");
  auto judge = ChatRequest::UserTurn(RequestTag::kJudge, "please judge me");
  EXPECT_EQ(g.Complete(judge).text, "Score");
  EXPECT_EQ(g.Complete(judge).text, "Score");
  EXPECT_THROW(g.Complete(SampleRequest(RequestTag::kValue)), GatewayError);
  EXPECT_EQ(audit.Entries().size(), 4u);

  WriteFileText(dir / "bad.jsonl", R"({"tag":"nonsense","response":"x"})" "\n");
  EXPECT_THROW(LoadScript(dir / "bad.jsonl"), ParseError);
}

TEST(AuditLogTest, WritesDigestsNotImageBytes) {
  testing::TempDir dir;
  {
    AuditLog audit(dir / "audit.jsonl");
    audit.RecordAttempt(SampleRequest(RequestTag::kQa, 2), GatewayConfig{}, 1);
    audit.RecordAttempt(SampleRequest(RequestTag::kGeneration, 1), GatewayConfig{}, 2);
  }
  const std::string text = ReadFileText(dir / "audit.jsonl");
  EXPECT_EQ(text.find("base64"), std::string::npos);
  const auto records = ReadJsonl(dir / "audit.jsonl");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].value["tag"], "qa");
  EXPECT_EQ(records[0].value["image_count"], 2);
  EXPECT_EQ(records[0].value["temperature"], 0.0);
  EXPECT_TRUE(records[1].value["temperature"].is_null());
  EXPECT_EQ(records[1].value["attempt"], 2);
}

// A local chat-completions server that fails twice before answering.
class FakeChatServer {
 public:
  FakeChatServer() {
    server_.Post("/v1/chat/completions",
                 [this](const httplib::Request& req, httplib::Response& res) {
                   std::lock_guard<std::mutex> lock(mu_);
                   requests_.push_back(req.body);
                   auth_.push_back(req.get_header_value("Authorization"));
                   if (requests_.size() <= 2) {
                     res.status = 503;
                     return;
                   }
                   res.set_content(OkBody("served"), "application/json");
                 });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeChatServer() {
    server_.stop();
    thread_.join();
  }

  std::string url() const {
    return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions";
  }
  std::vector<std::string> requests() {
    std::lock_guard<std::mutex> lock(mu_);
    return requests_;
  }
  std::vector<std::string> auth() {
    std::lock_guard<std::mutex> lock(mu_);
    return auth_;
  }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::mutex mu_;
  std::vector<std::string> requests_;
  std::vector<std::string> auth_;
};

TEST(HttpTransportTest, TalksToARealServer) {
  FakeChatServer server;
  GatewayConfig cfg;
  cfg.endpoint = server.url();
  cfg.api_key = "secret";
  cfg.model = "local";
  cfg.retry_backoff = {1ms};
  HttpGateway g(cfg, MakeHttpTransport(cfg));
  const ChatResponse r = g.Complete(SampleRequest(RequestTag::kQa));
  EXPECT_EQ(r.text, "served");
  EXPECT_EQ(r.attempts, 3);
  const auto requests = server.requests();
  ASSERT_EQ(requests.size(), 3u);
  const json body = json::parse(requests.back());
  EXPECT_EQ(body["model"], "local");
  EXPECT_EQ(body["temperature"], 0.0);
  EXPECT_EQ(server.auth().back(), "Bearer secret");
}

TEST(HttpTransportTest, UnreachableEndpointReportsStatusZero) {
  GatewayConfig cfg;
  cfg.endpoint = "http://127.0.0.1:1/v1/chat/completions";
  cfg.timeout = std::chrono::seconds(2);
  auto transport = MakeHttpTransport(cfg);
  const TransportResult r = transport->Post("{}");
  EXPECT_EQ(r.status, 0);
  EXPECT_FALSE(r.error.empty());
  cfg.endpoint = "not a url";
  EXPECT_THROW(MakeHttpTransport(cfg), PreconditionError);
}

}  // namespace
}  // namespace semwm::gateway
