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

#ifndef SEMWM_GATEWAY_GATEWAY_H_
#define SEMWM_GATEWAY_GATEWAY_H_

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "semwm/core/config.h"
#include "semwm/core/error.h"

namespace semwm::gateway {

enum class Role { kSystem, kUser, kAssistant };

// Pipeline stage that issued a request. Drives sampling defaults and lets the
// audit log be sliced per stage.
enum class RequestTag { kGeneration, kQa, kJudge, kAnnotation, kProposal, kValue };

std::string_view ToString(RequestTag tag);
std::optional<RequestTag> RequestTagFromString(std::string_view name);

// Images travel by content. Paths are resolved by the caller before a request
// is built.
struct ImageContent {
  std::string mime_type = "image/png";
  std::vector<std::uint8_t> bytes;
};

struct ChatMessage {
  Role role = Role::kUser;
  std::string text;
  std::vector<ImageContent> images;
};

struct ChatRequest {
  std::vector<ChatMessage> messages;
  std::optional<double> temperature;
  std::optional<int> max_output;
  RequestTag tag = RequestTag::kGeneration;

  // Convenience for the common single-user-turn shape.
  static ChatRequest UserTurn(RequestTag tag, std::string text,
                              std::vector<ImageContent> images = {});

  std::size_t ImageCount() const;
  // Concatenated text of all messages, for matching and logging.
  std::string AllText() const;
};

struct Usage {
  int prompt_tokens = 0;
  int completion_tokens = 0;
  int total_tokens = 0;
};

struct ChatResponse {
  std::string text;
  Usage usage;
  int attempts = 1;
};

class GatewayError : public Error {
 public:
  enum class Kind { kRetriesExhausted, kAuthentication, kRejected, kMissingText };

  GatewayError(Kind kind, const std::string& message)
      : Error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct GatewayConfig {
  std::string endpoint;  // full chat-completions URL
  std::string model;
  std::string api_key;
  int retry_limit = 3;
  // Sleep before retry i uses entry min(i, size - 1); empty means no sleep.
  std::vector<std::chrono::milliseconds> retry_backoff = {
      std::chrono::milliseconds(500), std::chrono::milliseconds(1000),
      std::chrono::milliseconds(2000)};
  std::map<RequestTag, double> temperature_overrides;
  int max_output_tokens = 1024;
  double requests_per_minute = 0.0;  // 0 disables rate limiting
  int max_in_flight = 8;
  std::chrono::seconds timeout{120};

  // Throws PreconditionError on negative retry limits and similar.
  void Validate() const;
};

// Temperature actually sent for `req`: an explicit request value wins, then a
// per-tag override, then 0.0 for qa. Every other tag sends none, which leaves
// the provider default in place.
std::optional<double> ResolveTemperature(const ChatRequest& req,
                                         const GatewayConfig& cfg);

// Builds the chat-completions JSON body. With inline_images the images are
// base64 data URLs; otherwise each is replaced by "sha256:<digest>" (the form
// written to the audit log).
nlohmann::json BuildWirePayload(const ChatRequest& req,
                                const GatewayConfig& cfg, bool inline_images);

// Extracts choices[0].message.content and usage from a response body. Throws
// GatewayError(kMissingText) when there is no text.
ChatResponse ParseWireResponse(std::string_view body);

// Reads [gateway] then overlays [gateway:<role>] and finally the environment
// (SEMWM_ENDPOINT / SEMWM_API_KEY / SEMWM_MODEL, or the role-specific
// SEMWM_<ROLE>_ENDPOINT etc.). Keys: endpoint, model, api_key, retry_limit,
// retry_backoff_ms (comma list), max_output_tokens, requests_per_minute,
// max_in_flight, timeout_s, temperature_<tag>.
GatewayConfig ResolveGatewayConfig(const Config& config,
                                   std::string_view role = "");

// Abstract chat endpoint. Implementations are safe for concurrent use.
class ChatGateway {
 public:
  virtual ~ChatGateway() = default;
  virtual ChatResponse Complete(const ChatRequest& req) = 0;
};

}  // namespace semwm::gateway

#endif  // SEMWM_GATEWAY_GATEWAY_H_
