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

#include <httplib.h>

#include <regex>

#include "semwm/gateway/http_gateway.h"

namespace semwm::gateway {
namespace {

class HttpTransport : public Transport {
 public:
  HttpTransport(std::string origin, std::string path, std::string api_key,
                std::chrono::seconds timeout)
      : origin_(std::move(origin)),
        path_(std::move(path)),
        api_key_(std::move(api_key)),
        timeout_(timeout) {}

  TransportResult Post(const std::string& body) override {
    // httplib::Client is not safe for concurrent requests; one per call.
    httplib::Client client(origin_);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    client.set_write_timeout(timeout_);
    httplib::Headers headers;
    if (!api_key_.empty()) {
      headers.emplace("Authorization", "Bearer " + api_key_);
    }
    auto res = client.Post(path_, headers, body, "application/json");
    if (!res) return TransportResult{0, "", httplib::to_string(res.error())};
    return TransportResult{res->status, res->body, ""};
  }

 private:
  std::string origin_;
  std::string path_;
  std::string api_key_;
  std::chrono::seconds timeout_;
};

}  // namespace

std::unique_ptr<Transport> MakeHttpTransport(const GatewayConfig& cfg) {
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)",
                               std::regex::icase);
  std::smatch match;
  if (!std::regex_match(cfg.endpoint, match, kUrl)) {
    throw PreconditionError("gateway endpoint is not an http(s) URL: '" +
                            cfg.endpoint + "'");
  }
  const std::string path = match[2].matched ? match[2].str() : "/";
  return std::make_unique<HttpTransport>(match[1].str(), path, cfg.api_key,
                                         cfg.timeout);
}

}  // namespace semwm::gateway
