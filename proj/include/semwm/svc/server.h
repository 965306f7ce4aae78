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

#ifndef SEMWM_SVC_SERVER_H_
#define SEMWM_SVC_SERVER_H_

#include <filesystem>
#include <memory>
#include <string>
#include <thread>

#include "semwm/svc/service.h"

namespace semwm::svc {

// HTTP binding of ServiceCore:
//   GET  /api/review/next?kind=qa|ambiguity[&queue=qualification]
//   POST /api/review/{id}/verdict[?queue=qualification]
//   GET  /api/arena/next
//   POST /api/arena/{id}/result
//   GET  /api/elo
//   GET  /api/settings
//   GET  /api/images/{sha256}
// Optionally serves a static UI directory at "/".
class HttpServer {
 public:
  HttpServer(ServiceCore& core, std::filesystem::path static_dir = {});
  ~HttpServer();

  // Binds and starts serving on a background thread. Port 0 picks a free
  // port. Returns the bound port; throws IoError on bind failure.
  int Start(const std::string& host, int port);
  // Serves on the calling thread until Stop().
  void Run(const std::string& host, int port);
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace semwm::svc

#endif  // SEMWM_SVC_SERVER_H_
