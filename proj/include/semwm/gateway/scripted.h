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

#ifndef SEMWM_GATEWAY_SCRIPTED_H_
#define SEMWM_GATEWAY_SCRIPTED_H_

#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "semwm/gateway/audit.h"
#include "semwm/gateway/gateway.h"

namespace semwm::gateway {

// Raised for script misuse (no matching entry, script exhausted). Distinct from
// GatewayError so pipeline stages never mistake it for an endpoint failure.
class ScriptError : public Error {
 public:
  using Error::Error;
};

using Matcher = std::function<bool(const ChatRequest&)>;
using Responder = std::function<std::string(const ChatRequest&)>;

Matcher AnyRequest();
Matcher TagIs(RequestTag tag);
// Matches when the concatenated message text contains `needle`.
Matcher PromptContains(std::string needle);
Matcher AllOf(std::vector<Matcher> matchers);

struct ScriptEntry {
  std::string label;
  Matcher matcher = AnyRequest();
  Responder respond;
  // Sticky entries are never consumed.
  bool repeat = false;
  // Simulated transport failure: throws GatewayError(kRetriesExhausted).
  bool fail = false;

  static ScriptEntry Reply(Matcher m, std::string text, bool repeat = false);
  static ScriptEntry Dynamic(Matcher m, Responder r, bool repeat = true);
};

// Deterministic mock: each request consumes the first matching entry in
// script order. Builds the same wire payload as the HTTP gateway, so the
// audit log is identical in shape.
class ScriptedGateway : public ChatGateway {
 public:
  explicit ScriptedGateway(std::vector<ScriptEntry> script,
                           GatewayConfig cfg = {}, AuditLog* audit = nullptr);

  ChatResponse Complete(const ChatRequest& req) override;

  std::size_t calls() const;
  // Entries not yet consumed (sticky entries excluded).
  std::size_t remaining() const;

 private:
  mutable std::mutex mu_;
  std::vector<ScriptEntry> script_;
  std::vector<bool> used_;
  GatewayConfig cfg_;
  AuditLog* audit_;
  std::size_t calls_ = 0;
};

// Loads a script from JSONL. Each line:
//   {"label"?, "tag"?, "contains"?, "response"?, "repeat"?, "fail"?}
// "tag" and "contains" are ANDed; both absent matches anything.
std::vector<ScriptEntry> LoadScript(const std::filesystem::path& path);

}  // namespace semwm::gateway

#endif  // SEMWM_GATEWAY_SCRIPTED_H_
