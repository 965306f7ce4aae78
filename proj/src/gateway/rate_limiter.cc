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

#include "semwm/gateway/rate_limiter.h"

#include <algorithm>

namespace semwm::gateway {

TokenBucket::TokenBucket(double requests_per_minute, double burst)
    : rate_per_second_(requests_per_minute / 60.0),
      capacity_(std::max(1.0, burst)),
      tokens_(capacity_) {}

TokenBucket::Clock::duration TokenBucket::Reserve(Clock::time_point now) {
  if (!enabled()) return Clock::duration::zero();
  std::lock_guard<std::mutex> lock(mu_);
  if (!started_) {
    last_ = now;
    started_ = true;
  }
  if (now > last_) {
    const double elapsed = std::chrono::duration<double>(now - last_).count();
    tokens_ = std::min(capacity_, tokens_ + elapsed * rate_per_second_);
    last_ = now;
  }
  // Tokens may go negative: that debt is the queue of waiting callers.
  tokens_ -= 1.0;
  if (tokens_ >= 0.0) return Clock::duration::zero();
  return std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(-tokens_ / rate_per_second_));
}

}  // namespace semwm::gateway
