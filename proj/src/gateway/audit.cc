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

#include "semwm/gateway/audit.h"

namespace semwm::gateway {

AuditLog::AuditLog(const std::filesystem::path& path)
    : file_(std::make_unique<JsonlAppender>(path)) {}

void AuditLog::RecordAttempt(const ChatRequest& req, const GatewayConfig& cfg,
                             int attempt) {
  nlohmann::json entry = {
      {"tag", ToString(req.tag)},
      {"attempt", attempt},
      {"image_count", req.ImageCount()},
      {"payload", BuildWirePayload(req, cfg, /*inline_images=*/false)},
  };
  const auto temperature = ResolveTemperature(req, cfg);
  entry["temperature"] =
      temperature ? nlohmann::json(*temperature) : nlohmann::json(nullptr);
  std::lock_guard<std::mutex> lock(mu_);
  entry["seq"] = entries_.size();
  if (file_) file_->Append(entry);
  entries_.push_back(std::move(entry));
}

std::vector<nlohmann::json> AuditLog::Entries() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_;
}

}  // namespace semwm::gateway
