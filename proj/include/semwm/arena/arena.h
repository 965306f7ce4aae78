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

#ifndef SEMWM_ARENA_ARENA_H_
#define SEMWM_ARENA_ARENA_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace semwm::arena {

enum class Winner { kA, kB, kTie, kPending };
enum class Side { kA, kB };  // which model is shown on the left

std::string_view ToString(Winner w);
std::optional<Winner> WinnerFromString(std::string_view s);

// One pairwise comparison. model_a < model_b lexicographically; `left`
// records which of them was presented on the left. The winner always refers
// to model identity, never to a screen side.
struct MatchRecord {
  std::string match_id;
  std::string item_id;
  std::string model_a;
  std::string model_b;
  std::string output_a;
  std::string output_b;
  Side left = Side::kA;
  Winner winner = Winner::kPending;

  bool decided() const { return winner != Winner::kPending; }
};

void to_json(nlohmann::json& j, const MatchRecord& m);
void from_json(const nlohmann::json& j, MatchRecord& m);

struct ModelOutput {
  std::string item_id;
  std::string model;
  std::string output;
};

// n independent draws, each uniform over items and unordered model pairs,
// with a fair coin for the left side. Ids are "s<seed>-<index>".
// Throws PreconditionError with fewer than two models or when a model lacks
// an output for some item.
std::vector<MatchRecord> SampleMatches(const std::vector<ModelOutput>& outputs,
                                       int n, std::uint64_t seed);

// Standard logistic expectation for a.
double EloExpected(double r_a, double r_b);
std::pair<double, double> EloUpdate(double r_a, double r_b, Winner outcome,
                                    double k);

struct EloConfig {
  double initial_rating = 1000.0;
  double k_factor = 4.0;
  int permutations = 100;
  std::uint64_t seed = 0;
  int concurrency = 1;

  void Validate() const;
};

struct Rating {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation over permutations
};

// Replays the log in cfg.permutations seeded random orders from the initial
// rating and reports per-model mean and std. Orderings are independent of
// cfg.concurrency. Throws on an empty log or any pending record.
std::map<std::string, Rating> ComputeElo(const std::vector<MatchRecord>& log,
                                         const EloConfig& cfg);

// Single sequential replay in the given order.
std::map<std::string, double> ReplayElo(const std::vector<MatchRecord>& log,
                                        const EloConfig& cfg);

}  // namespace semwm::arena

#endif  // SEMWM_ARENA_ARENA_H_
