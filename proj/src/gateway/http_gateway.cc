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

#include "semwm/gateway/http_gateway.h"

#include <algorithm>
#include <thread>

#include <spdlog/spdlog.h>

namespace semwm::gateway {
namespace {

bool Retryable(const TransportResult& r) {
  return r.status == 0 || r.status == 429 || r.status >= 500;
}

// Releases an in-flight slot on scope exit.
class SlotGuard {
 public:
  explicit SlotGuard(std::counting_semaphore<1024>& sem) : sem_(sem) {
    sem_.acquire();
  }
  ~SlotGuard() { sem_.release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  std::counting_semaphore<1024>& sem_;
};

}  // namespace

HttpGateway::HttpGateway(GatewayConfig cfg, std::unique_ptr<Transport> transport,
                         AuditLog* audit, Sleeper sleeper)
    : cfg_(std::move(cfg)),
      transport_(std::move(transport)),
      audit_(audit),
      sleep_(sleeper ? std::move(sleeper)
                     : Sleeper([](std::chrono::nanoseconds d) {
                         std::this_thread::sleep_for(d);
                       })),
      bucket_(cfg_.requests_per_minute),
      in_flight_(std::clamp(cfg_.max_in_flight, 1, 1024)) {
  cfg_.Validate();
}

ChatResponse HttpGateway::Complete(const ChatRequest& req) {
  const std::string body =
      BuildWirePayload(req, cfg_, /*inline_images=*/true).dump();
  SlotGuard slot(in_flight_);
  TransportResult last;
  const int max_attempts = cfg_.retry_limit + 1;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    if (auto wait = bucket_.Reserve(TokenBucket::Clock::now());
        wait > TokenBucket::Clock::duration::zero()) {
      sleep_(wait);
    }
    if (audit_ != nullptr) audit_->RecordAttempt(req, cfg_, attempt);
    last = transport_->Post(body);
    if (Retryable(last)) {
      spdlog::warn("gateway: {} attempt {}/{} failed (status {}{}{})",
                   ToString(req.tag), attempt, max_attempts, last.status,
                   last.error.empty() ? "" : ", ", last.error);
      if (attempt < max_attempts && !cfg_.retry_backoff.empty()) {
        const std::size_t i = std::min<std::size_t>(
            attempt - 1, cfg_.retry_backoff.size() - 1);
        sleep_(cfg_.retry_backoff[i]);
      }
      continue;
    }
    if (last.status == 401 || last.status == 403) {
      throw GatewayError(GatewayError::Kind::kAuthentication,
                         "authentication failed (HTTP " +
                             std::to_string(last.status) + ")");
    }
    if (last.status >= 400) {
      throw GatewayError(GatewayError::Kind::kRejected,
                         "request rejected (HTTP " +
                             std::to_string(last.status) + "): " + last.body);
    }
    ChatResponse response = ParseWireResponse(last.body);
    response.attempts = attempt;
    return response;
  }
  throw GatewayError(GatewayError::Kind::kRetriesExhausted,
                     "retries exhausted after " + std::to_string(max_attempts) +
                         " attempts (last status " +
                         std::to_string(last.status) +
                         (last.error.empty() ? "" : ": " + last.error) + ")");
}

}  // namespace semwm::gateway
