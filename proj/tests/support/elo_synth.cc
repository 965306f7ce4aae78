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

#include "support/elo_synth.h"

#include <random>

namespace semwm::testing {

double Log5(double p_a, double p_b) {
  const double a = p_a * (1.0 - p_b);
  const double b = p_b * (1.0 - p_a);
  return a / (a + b);
}

std::vector<arena::MatchRecord> SyntheticMatches(
    const std::vector<SyntheticModel>& models, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, models.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<arena::MatchRecord> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::size_t x = pick(rng), y = pick(rng);
    while (y == x) y = pick(rng);
    const SyntheticModel* a = &models[x];
    const SyntheticModel* b = &models[y];
    if (b->name < a->name) std::swap(a, b);
    arena::MatchRecord m;
    m.match_id = "syn-" + std::to_string(i);
    m.item_id = "item" + std::to_string(i % 50);
    m.model_a = a->name;
    m.model_b = b->name;
    m.winner = unit(rng) < Log5(a->win_rate, b->win_rate) ? arena::Winner::kA
                                                          : arena::Winner::kB;
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace semwm::testing
