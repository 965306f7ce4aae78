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

#include "semwm/gateway/gateway.h"

#include <array>
#include <cctype>
#include <cstdlib>
#include <utility>

#include "semwm/core/hash.h"
#include "semwm/core/text.h"

namespace semwm::gateway {
namespace {

using nlohmann::json;

constexpr std::array<std::pair<RequestTag, std::string_view>, 6> kTagNames = {{
    {RequestTag::kGeneration, "generation"},
    {RequestTag::kQa, "qa"},
    {RequestTag::kJudge, "judge"},
    {RequestTag::kAnnotation, "annotation"},
    {RequestTag::kProposal, "proposal"},
    {RequestTag::kValue, "value"},
}};

std::string_view RoleName(Role role) {
  switch (role) {
    case Role::kSystem: return "system";
    case Role::kAssistant: return "assistant";
    case Role::kUser: break;
  }
  return "user";
}

std::optional<std::string> Env(const std::string& name) {
  const char* value = std::getenv(name.c_str());
  if (value == nullptr || *value == '\0') return std::nullopt;
  return std::string(value);
}

void ApplySection(const Config& config, const std::string& section,
                  GatewayConfig& cfg) {
  if (!config.HasSection(section)) return;
  cfg.endpoint = config.GetString(section, "endpoint", cfg.endpoint);
  cfg.model = config.GetString(section, "model", cfg.model);
  cfg.api_key = config.GetString(section, "api_key", cfg.api_key);
  cfg.retry_limit = config.GetInt(section, "retry_limit", cfg.retry_limit);
  cfg.max_output_tokens =
      config.GetInt(section, "max_output_tokens", cfg.max_output_tokens);
  cfg.requests_per_minute =
      config.GetDouble(section, "requests_per_minute", cfg.requests_per_minute);
  cfg.max_in_flight = config.GetInt(section, "max_in_flight", cfg.max_in_flight);
  cfg.timeout = std::chrono::seconds(
      config.GetInt(section, "timeout_s", static_cast<int>(cfg.timeout.count())));
  if (auto backoff = config.Get(section, "retry_backoff_ms")) {
    cfg.retry_backoff.clear();
    std::size_t start = 0;
    while (start <= backoff->size()) {
      std::size_t end = backoff->find(',', start);
      if (end == std::string::npos) end = backoff->size();
      const std::string item(Trim(std::string_view(*backoff).substr(start, end - start)));
      if (!item.empty()) {
        try {
          cfg.retry_backoff.emplace_back(std::stoi(item));
        } catch (const std::exception&) {
          throw ParseError("config [" + section + "] retry_backoff_ms: bad '" +
                           item + "'");
        }
      }
      start = end + 1;
    }
  }
  for (const auto& [tag, name] : kTagNames) {
    const std::string key = "temperature_" + std::string(name);
    if (config.Get(section, key)) {
      cfg.temperature_overrides[tag] = config.GetDouble(section, key, 0.0);
    }
  }
}

}  // namespace

std::string_view ToString(RequestTag tag) {
  for (const auto& [t, name] : kTagNames) {
    if (t == tag) return name;
  }
  return "unknown";
}

std::optional<RequestTag> RequestTagFromString(std::string_view name) {
  for (const auto& [t, n] : kTagNames) {
    if (n == name) return t;
  }
  return std::nullopt;
}

ChatRequest ChatRequest::UserTurn(RequestTag tag, std::string text,
                                  std::vector<ImageContent> images) {
  ChatRequest req;
  req.tag = tag;
  req.messages.push_back(
      ChatMessage{Role::kUser, std::move(text), std::move(images)});
  return req;
}

std::size_t ChatRequest::ImageCount() const {
  std::size_t n = 0;
  for (const ChatMessage& m : messages) n += m.images.size();
  return n;
}

std::string ChatRequest::AllText() const {
  std::string out;
  for (const ChatMessage& m : messages) {
    if (!out.empty()) out += '\n';
    out += m.text;
  }
  return out;
}

void GatewayConfig::Validate() const {
  if (retry_limit < 0) throw PreconditionError("retry_limit must be >= 0");
  if (max_in_flight < 1) throw PreconditionError("max_in_flight must be >= 1");
  if (requests_per_minute < 0.0) {
    throw PreconditionError("requests_per_minute must be >= 0");
  }
  if (max_output_tokens < 1) {
    throw PreconditionError("max_output_tokens must be >= 1");
  }
  for (const auto& [tag, t] : temperature_overrides) {
    if (t < 0.0) throw PreconditionError("temperature must be >= 0");
  }
}

std::optional<double> ResolveTemperature(const ChatRequest& req,
                                         const GatewayConfig& cfg) {
  if (req.temperature) return req.temperature;
  if (auto it = cfg.temperature_overrides.find(req.tag);
      it != cfg.temperature_overrides.end()) {
    return it->second;
  }
  if (req.tag == RequestTag::kQa) return 0.0;
  return std::nullopt;
}

json BuildWirePayload(const ChatRequest& req, const GatewayConfig& cfg,
                      bool inline_images) {
  if (req.messages.empty()) {
    throw PreconditionError("chat request needs at least one message");
  }
  json messages = json::array();
  for (const ChatMessage& m : req.messages) {
    json content = json::array();
    content.push_back({{"type", "text"}, {"text", m.text}});
    for (const ImageContent& image : m.images) {
      const std::string url =
          inline_images ? "data:" + image.mime_type + ";base64," +
                              Base64Encode(image.bytes)
                        : "sha256:" + Sha256Hex(image.bytes);
      content.push_back(
          {{"type", "image_url"}, {"image_url", {{"url", url}}}});
    }
    messages.push_back({{"role", RoleName(m.role)}, {"content", content}});
  }
  json payload = {{"model", cfg.model}, {"messages", messages}};
  if (auto t = ResolveTemperature(req, cfg)) payload["temperature"] = *t;
  payload["max_tokens"] = req.max_output.value_or(cfg.max_output_tokens);
  return payload;
}

ChatResponse ParseWireResponse(std::string_view body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw GatewayError(GatewayError::Kind::kMissingText,
                       std::string("response is not JSON: ") + e.what());
  }
  ChatResponse out;
  const json* content = nullptr;
  if (doc.contains("choices") && doc["choices"].is_array() &&
      !doc["choices"].empty()) {
    const json& choice = doc["choices"][0];
    if (choice.contains("message") && choice["message"].contains("content")) {
      content = &choice["message"]["content"];
    }
  }
  if (content != nullptr && content->is_string()) {
    out.text = content->get<std::string>();
  } else if (content != nullptr && content->is_array()) {
    for (const json& part : *content) {
      if (part.value("type", "") == "text") out.text += part.value("text", "");
    }
  }
  if (out.text.empty()) {
    throw GatewayError(GatewayError::Kind::kMissingText,
                       "response has no message text");
  }
  if (doc.contains("usage") && doc["usage"].is_object()) {
    const json& u = doc["usage"];
    out.usage.prompt_tokens = u.value("prompt_tokens", 0);
    out.usage.completion_tokens = u.value("completion_tokens", 0);
    out.usage.total_tokens = u.value(
        "total_tokens", out.usage.prompt_tokens + out.usage.completion_tokens);
  }
  return out;
}

GatewayConfig ResolveGatewayConfig(const Config& config, std::string_view role) {
  GatewayConfig cfg;
  ApplySection(config, "gateway", cfg);
  std::string env_prefix = "SEMWM_";
  if (!role.empty()) {
    ApplySection(config, "gateway:" + std::string(role), cfg);
  }
  const auto apply_env = [&](const std::string& prefix) {
    if (auto v = Env(prefix + "ENDPOINT")) cfg.endpoint = *v;
    if (auto v = Env(prefix + "API_KEY")) cfg.api_key = *v;
    if (auto v = Env(prefix + "MODEL")) cfg.model = *v;
  };
  apply_env(env_prefix);
  if (!role.empty()) {
    std::string upper(role);
    for (char& c : upper) c = static_cast<char>(std::toupper(c));
    apply_env(env_prefix + upper + "_");
  }
  cfg.Validate();
  return cfg;
}

}  // namespace semwm::gateway
