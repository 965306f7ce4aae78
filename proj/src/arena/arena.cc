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

#include "semwm/arena/arena.h"

#include <cmath>
#include <set>

#include "semwm/arena/random.h"
#include "semwm/core/error.h"
#include "semwm/core/parallel.h"

namespace semwm::arena {
namespace {

using nlohmann::json;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string_view ToString(Winner w) {
  switch (w) {
    case Winner::kA: return "a";
    case Winner::kB: return "b";
    case Winner::kTie: return "tie";
    case Winner::kPending: break;
  }
  return "pending";
}

std::optional<Winner> WinnerFromString(std::string_view s) {
  if (s == "a") return Winner::kA;
  if (s == "b") return Winner::kB;
  if (s == "tie") return Winner::kTie;
  if (s == "pending") return Winner::kPending;
  return std::nullopt;
}

void to_json(json& j, const MatchRecord& m) {
  j = json{{"match_id", m.match_id}, {"item_id", m.item_id},
           {"model_a", m.model_a},   {"model_b", m.model_b},
           {"output_a", m.output_a}, {"output_b", m.output_b},
           {"left", m.left == Side::kA ? "a" : "b"},
           {"winner", ToString(m.winner)}};
}

void from_json(const json& j, MatchRecord& m) {
  m.match_id = j.at("match_id").get<std::string>();
  m.item_id = j.value("item_id", "");
  m.model_a = j.at("model_a").get<std::string>();
  m.model_b = j.at("model_b").get<std::string>();
  m.output_a = j.value("output_a", "");
  m.output_b = j.value("output_b", "");
  const std::string left = j.value("left", "a");
  if (left != "a" && left != "b") throw ParseError("left must be 'a' or 'b'");
  m.left = left == "a" ? Side::kA : Side::kB;
  auto w = WinnerFromString(j.value("winner", "pending"));
  if (!w) throw ParseError("unknown winner value");
  m.winner = *w;
  if (m.model_a == m.model_b) {
    throw ParseError("match " + m.match_id + " pairs a model with itself");
  }
}

std::vector<MatchRecord> SampleMatches(const std::vector<ModelOutput>& outputs,
                                       int n, std::uint64_t seed) {
  std::map<std::string, std::map<std::string, std::string>> by_item;
  std::set<std::string> model_set;
  for (const ModelOutput& o : outputs) {
    by_item[o.item_id][o.model] = o.output;
    model_set.insert(o.model);
  }
  if (model_set.size() < 2) {
    throw PreconditionError("match sampling needs at least two models");
  }
  const std::vector<std::string> models(model_set.begin(), model_set.end());
  for (const auto& [item, per_model] : by_item) {
    for (const std::string& m : models) {
      if (!per_model.contains(m)) {
        throw PreconditionError("model " + m + " has no output for item " +
                                item);
      }
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < models.size(); ++i) {
    for (std::size_t k = i + 1; k < models.size(); ++k) pairs.emplace_back(i, k);
  }
  std::vector<const std::string*> items;
  for (const auto& entry : by_item) items.push_back(&entry.first);

  std::mt19937_64 rng(seed);
  std::vector<MatchRecord> out;
  for (int i = 0; i < n; ++i) {
    const std::string& item = *items[UniformIndex(rng, items.size())];
    const auto [a, b] = pairs[UniformIndex(rng, pairs.size())];
    MatchRecord m;
    m.match_id = "s" + std::to_string(seed) + "-" + std::to_string(i);
    m.item_id = item;
    m.model_a = models[a];
    m.model_b = models[b];
    m.output_a = by_item[item][models[a]];
    m.output_b = by_item[item][models[b]];
    m.left = UniformIndex(rng, 2) == 0 ? Side::kA : Side::kB;
    out.push_back(std::move(m));
  }
  return out;
}

double EloExpected(double r_a, double r_b) {
  return 1.0 / (1.0 + std::pow(10.0, (r_b - r_a) / 400.0));
}

std::pair<double, double> EloUpdate(double r_a, double r_b, Winner outcome,
                                    double k) {
  double s_a = 0.5;
  switch (outcome) {
    case Winner::kA: s_a = 1.0; break;
    case Winner::kB: s_a = 0.0; break;
    case Winner::kTie: break;
    case Winner::kPending:
      throw PreconditionError("cannot apply a pending match");
  }
  // Applying the same delta to both sides keeps the rating sum exact.
  const double delta = k * (s_a - EloExpected(r_a, r_b));
  return {r_a + delta, r_b - delta};
}

void EloConfig::Validate() const {
  if (!(k_factor > 0.0)) throw PreconditionError("k_factor must be > 0");
  if (permutations < 1) throw PreconditionError("permutations must be >= 1");
}

std::map<std::string, double> ReplayElo(const std::vector<MatchRecord>& log,
                                        const EloConfig& cfg) {
  std::map<std::string, double> r;
  for (const MatchRecord& m : log) {
    double& a = r.try_emplace(m.model_a, cfg.initial_rating).first->second;
    double& b = r.try_emplace(m.model_b, cfg.initial_rating).first->second;
    std::tie(a, b) = EloUpdate(a, b, m.winner, cfg.k_factor);
  }
  return r;
}

std::map<std::string, Rating> ComputeElo(const std::vector<MatchRecord>& log,
                                         const EloConfig& cfg) {
  cfg.Validate();
  if (log.empty()) throw PreconditionError("ELO needs at least one match");
  for (const MatchRecord& m : log) {
    if (!m.decided()) {
      throw PreconditionError("match " + m.match_id + " is still pending");
    }
  }
  const auto n = static_cast<std::size_t>(cfg.permutations);
  std::vector<std::map<std::string, double>> runs(n);
  ParallelFor(n, cfg.concurrency, [&](std::size_t p) {
    std::mt19937_64 rng(SplitMix64(cfg.seed ^ SplitMix64(p)));
    std::vector<std::size_t> order(log.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Shuffle(order, rng);
    std::vector<MatchRecord> shuffled;
    shuffled.reserve(log.size());
    for (std::size_t i : order) shuffled.push_back(log[i]);
    runs[p] = ReplayElo(shuffled, cfg);
  });
  std::map<std::string, Rating> out;
  for (const auto& [model, unused] : runs.front()) {
    double sum = 0.0;
    for (const auto& run : runs) sum += run.at(model);
    const double mean = sum / static_cast<double>(n);
    double var = 0.0;
    for (const auto& run : runs) {
      const double d = run.at(model) - mean;
      var += d * d;
    }
    out[model] = Rating{mean, std::sqrt(var / static_cast<double>(n))};
  }
  return out;
}

}  // namespace semwm::arena
