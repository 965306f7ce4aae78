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

#ifndef SEMWM_GATEWAY_AUDIT_H_
#define SEMWM_GATEWAY_AUDIT_H_

#include <filesystem>
#include <memory>
#include <mutex>
#include <vector>

#include <nlohmann/json.hpp>

#include "semwm/core/jsonl.h"
#include "semwm/gateway/gateway.h"

namespace semwm::gateway {

// Record of every outbound payload, one JSON object per attempt:
//   {"seq", "tag", "attempt", "image_count", "temperature", "payload"}
// Image data is replaced by content digests. Optionally mirrored to a JSONL
// file; entries are always kept in memory for inspection.
class AuditLog {
 public:
  AuditLog() = default;
  explicit AuditLog(const std::filesystem::path& path);

  void RecordAttempt(const ChatRequest& req, const GatewayConfig& cfg,
                     int attempt);
  std::vector<nlohmann::json> Entries() const;

 private:
  mutable std::mutex mu_;
  std::vector<nlohmann::json> entries_;
  std::unique_ptr<JsonlAppender> file_;
};

}  // namespace semwm::gateway

#endif  // SEMWM_GATEWAY_AUDIT_H_
