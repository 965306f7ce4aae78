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

#include "semwm/svc/server.h"

#include <httplib.h>

#include <spdlog/spdlog.h>

#include "semwm/core/error.h"

namespace semwm::svc {
namespace {

using nlohmann::json;

void Send(httplib::Response& res, const Response& r) {
  res.status = r.status;
  if (r.status != 204) res.set_content(r.body.dump(), "application/json");
}

std::optional<json> ParseBody(const httplib::Request& req,
                              httplib::Response& res) {
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    Send(res, Response{400, json{{"error", std::string("invalid JSON: ") + e.what()}}});
    return std::nullopt;
  }
}

bool Qualification(const httplib::Request& req) {
  return req.has_param("queue") && req.get_param_value("queue") == "qualification";
}

}  // namespace

struct HttpServer::Impl {
  httplib::Server server;
  std::thread thread;
};

HttpServer::HttpServer(ServiceCore& core, std::filesystem::path static_dir)
    : impl_(std::make_unique<Impl>()) {
  auto& s = impl_->server;
  ServiceCore* c = &core;
  s.Get("/api/review/next", [c](const httplib::Request& req, httplib::Response& res) {
    Send(res, c->NextReview(req.get_param_value("kind").empty()
                                ? "qa"
                                : req.get_param_value("kind"),
                            Qualification(req)));
  });
  s.Post(R"(/api/review/(.+)/verdict)",
         [c](const httplib::Request& req, httplib::Response& res) {
           auto body = ParseBody(req, res);
           if (body) Send(res, c->SubmitVerdict(req.matches[1], *body, Qualification(req)));
         });
  s.Get("/api/arena/next", [c](const httplib::Request&, httplib::Response& res) {
    Send(res, c->NextMatch());
  });
  s.Post(R"(/api/arena/(.+)/result)",
         [c](const httplib::Request& req, httplib::Response& res) {
           auto body = ParseBody(req, res);
           if (body) Send(res, c->SubmitMatchResult(req.matches[1], *body));
         });
  s.Get("/api/elo", [c](const httplib::Request&, httplib::Response& res) {
    Send(res, c->Elo());
  });
  s.Get("/api/settings", [c](const httplib::Request&, httplib::Response& res) {
    Send(res, c->Settings());
  });
  s.Get(R"(/api/images/([0-9a-f]{64}))",
        [c](const httplib::Request& req, httplib::Response& res) {
          auto bytes = c->Image(req.matches[1]);
          if (!bytes) {
            Send(res, Response{404, json{{"error", "unknown image"}}});
            return;
          }
          res.set_content(std::string(bytes->begin(), bytes->end()), "image/png");
        });
  s.set_exception_handler(
      [](const httplib::Request& req, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          what = e.what();
        } catch (...) {
        }
        spdlog::error("{} {}: {}", req.method, req.path, what);
        Send(res, Response{500, json{{"error", what}}});
      });
  if (!static_dir.empty() && !s.set_mount_point("/", static_dir.string())) {
    throw IoError("static directory not found: " + static_dir.string());
  }
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Start(const std::string& host, int port) {
  auto& s = impl_->server;
  const int bound = port == 0 ? s.bind_to_any_port(host) : (s.bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw IoError("cannot bind " + host + ":" + std::to_string(port));
  }
  impl_->thread = std::thread([&s] { s.listen_after_bind(); });
  s.wait_until_ready();
  return bound;
}

void HttpServer::Run(const std::string& host, int port) {
  auto& s = impl_->server;
  if (!s.bind_to_port(host, port)) {
    throw IoError("cannot bind " + host + ":" + std::to_string(port));
  }
  spdlog::info("serving on http://{}:{}", host, port);
  s.listen_after_bind();
}

void HttpServer::Stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace semwm::svc
