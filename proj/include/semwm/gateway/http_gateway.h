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

#ifndef SEMWM_GATEWAY_HTTP_GATEWAY_H_
#define SEMWM_GATEWAY_HTTP_GATEWAY_H_

#include <chrono>
#include <functional>
#include <memory>
#include <semaphore>
#include <string>

#include "semwm/gateway/audit.h"
#include "semwm/gateway/gateway.h"
#include "semwm/gateway/rate_limiter.h"

namespace semwm::gateway {

struct TransportResult {
  int status = 0;       // HTTP status; 0 when the request never completed
  std::string body;
  std::string error;    // transport-level failure description
};

// Sends one serialized JSON body to the endpoint. Must be thread-safe.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual TransportResult Post(const std::string& body) = 0;
};

// cpp-httplib transport for http:// and https:// endpoints.
std::unique_ptr<Transport> MakeHttpTransport(const GatewayConfig& cfg);

// Chat-completions client with bounded in-flight requests, token-bucket rate
// limiting, and retries. Only transport failures, 429 and 5xx are retried;
// authentication and other 4xx errors, and replies without text, fail
// immediately.
class HttpGateway : public ChatGateway {
 public:
  using Sleeper = std::function<void(std::chrono::nanoseconds)>;

  HttpGateway(GatewayConfig cfg, std::unique_ptr<Transport> transport,
              AuditLog* audit = nullptr, Sleeper sleeper = {});

  ChatResponse Complete(const ChatRequest& req) override;

 private:
  GatewayConfig cfg_;
  std::unique_ptr<Transport> transport_;
  AuditLog* audit_;
  Sleeper sleep_;
  TokenBucket bucket_;
  std::counting_semaphore<1024> in_flight_;
};

}  // namespace semwm::gateway

#endif  // SEMWM_GATEWAY_HTTP_GATEWAY_H_
