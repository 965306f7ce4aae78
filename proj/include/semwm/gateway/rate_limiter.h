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

#ifndef SEMWM_GATEWAY_RATE_LIMITER_H_
#define SEMWM_GATEWAY_RATE_LIMITER_H_

#include <chrono>
#include <mutex>

namespace semwm::gateway {

// Token bucket refilled at requests_per_minute with capacity `burst`.
// Reserve() hands out tokens in arrival order and returns how long the caller
// must wait before using its token; it never blocks itself.
class TokenBucket {
 public:
  using Clock = std::chrono::steady_clock;

  TokenBucket(double requests_per_minute, double burst = 1.0);

  Clock::duration Reserve(Clock::time_point now);
  bool enabled() const { return rate_per_second_ > 0.0; }

 private:
  std::mutex mu_;
  double rate_per_second_;
  double capacity_;
  double tokens_;
  Clock::time_point last_{};
  bool started_ = false;
};

}  // namespace semwm::gateway

#endif  // SEMWM_GATEWAY_RATE_LIMITER_H_
