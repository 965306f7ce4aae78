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

// semwm command-line interface.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "semwm/annotate/annotate.h"
#include "semwm/arena/arena.h"
#include "semwm/bench/bench.h"
#include "semwm/core/config.h"
#include "semwm/core/error.h"
#include "semwm/core/files.h"
#include "semwm/core/image_store.h"
#include "semwm/core/jsonl.h"
#include "semwm/core/validate.h"
#include "semwm/filter/filter.h"
#include "semwm/gateway/audit.h"
#include "semwm/gateway/http_gateway.h"
#include "semwm/gateway/scripted.h"
#include "semwm/overlay/overlay.h"
#include "semwm/policy/policy.h"
#include "semwm/svc/server.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace semwm {
namespace {

struct Globals {
  std::string config_path;
  std::uint64_t seed = 0;
  int concurrency = 4;
  std::string mock_script;
  std::string audit_path = "audit.jsonl";
  std::string log_level = "info";
};

// Owns the gateways handed out to subcommands. With --mock-script every role
// shares one scripted gateway.
class Gateways {
 public:
  explicit Gateways(const Globals& g) : globals_(g) {
    if (!g.config_path.empty()) config_ = Config::Load(g.config_path);
    if (!g.audit_path.empty()) {
      audit_ = std::make_unique<gateway::AuditLog>(fs::path(g.audit_path));
    } else {
      audit_ = std::make_unique<gateway::AuditLog>();
    }
  }

  const Config& config() const { return config_; }

  gateway::ChatGateway& For(const std::string& role,
                            const std::string& endpoint_override = "") {
    if (!globals_.mock_script.empty()) {
      if (!mock_) {
        mock_ = std::make_unique<gateway::ScriptedGateway>(
            gateway::LoadScript(globals_.mock_script),
            gateway::ResolveGatewayConfig(config_, ""), audit_.get());
      }
      return *mock_;
    }
    auto& slot = live_[role];
    if (!slot) {
      gateway::GatewayConfig cfg = gateway::ResolveGatewayConfig(config_, role);
      if (!endpoint_override.empty()) cfg.endpoint = endpoint_override;
      if (cfg.endpoint.empty()) {
        throw PreconditionError(
            "no endpoint for role '" + role +
            "': set [gateway] endpoint, SEMWM_ENDPOINT or pass --mock-script");
      }
      slot = std::make_unique<gateway::HttpGateway>(
          cfg, gateway::MakeHttpTransport(cfg), audit_.get());
    }
    return *slot;
  }

 private:
  const Globals& globals_;
  Config config_;
  std::unique_ptr<gateway::AuditLog> audit_;
  std::unique_ptr<gateway::ScriptedGateway> mock_;
  std::map<std::string, std::unique_ptr<gateway::ChatGateway>> live_;
};

void PrintJson(const json& j) { std::cout << j.dump(2) << std::endl; }

// Rewrites screenshot refs so they resolve from `out_dir` instead of the
// manifest directory `in_dir`.
std::vector<Transition> Rebase(std::vector<Transition> ts, const fs::path& in_dir,
                               const fs::path& out_dir) {
  const fs::path from = fs::weakly_canonical(in_dir.empty() ? "." : in_dir);
  const fs::path to = fs::weakly_canonical(out_dir.empty() ? "." : out_dir);
  if (from == to) return ts;
  for (Transition& t : ts) {
    for (Screenshot* s : {&t.before, &t.after}) {
      s->image_ref = fs::relative(from / s->image_ref, to).generic_string();
    }
  }
  return ts;
}

ImageStore StoreFor(const fs::path& manifest) {
  return ImageStore(manifest.parent_path().empty() ? fs::path(".")
                                                   : manifest.parent_path());
}

std::vector<QAPair> Eligible(const std::vector<QAPair>& qas) {
  std::vector<QAPair> out;
  for (const QAPair& qa : qas) {
    if (qa.BenchmarkEligible()) out.push_back(qa);
  }
  return out;
}

void AddAnnotate(CLI::App& app, Globals& g) {
  auto* cmd = app.add_subcommand("annotate",
                                 "High-level actions and change descriptions");
  auto transitions = std::make_shared<std::string>();
  auto out_dir = std::make_shared<std::string>();
  auto n = std::make_shared<int>(annotate::kDescriptionsPerTransition);
  cmd->add_option("--transitions", *transitions, "transitions.jsonl")->required();
  cmd->add_option("--out-dir", *out_dir, "output directory")->required();
  cmd->add_option("--n", *n, "description candidates per transition");
  cmd->callback([=, &g] {
    Gateways gws(g);
    const fs::path in = *transitions;
    const ImageStore images = StoreFor(in);
    annotate::Annotator a{gws.For("annotator"), images,
                          overlay::StyleFromConfig(gws.config())};
    auto batch = annotate::AnnotateTransitions(LoadTransitions(in), a, *n,
                                               g.concurrency);
    const fs::path out = *out_dir;
    SaveJsonl(out / "transitions.jsonl",
              Rebase(batch.transitions, in.parent_path(), out));
    SaveJsonl(out / "descriptions.jsonl", batch.descriptions);
    PrintJson({{"transitions", batch.transitions.size()},
               {"descriptions", batch.descriptions.size()}});
  });
}

void AddQaGen(CLI::App& app, Globals& g) {
  auto* cmd = app.add_subcommand("qa-gen", "Generate QA candidates");
  auto transitions = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("--transitions", *transitions)->required();
  cmd->add_option("--out", *out, "qa_pairs.jsonl")->required();
  cmd->callback([=, &g] {
    Gateways gws(g);
    const fs::path in = *transitions;
    const ImageStore images = StoreFor(in);
    annotate::Annotator a{gws.For("annotator"), images,
                          overlay::StyleFromConfig(gws.config())};
    auto qas = annotate::GenerateQaBatch(LoadTransitions(in), a, g.concurrency);
    SaveJsonl(*out, qas);
    PrintJson({{"qa_pairs", qas.size()}});
  });
}

void AddFilter(CLI::App& app, Globals& g) {
  auto* cmd = app.add_subcommand("filter", "Quality filters");
  cmd->require_subcommand(1);

  for (const std::string stage : {"self-check", "relevance"}) {
    auto* sub = cmd->add_subcommand(stage, stage == "self-check"
                                               ? "Self-check with ground truth"
                                               : "Relevance judge");
    auto transitions = std::make_shared<std::string>();
    auto qa = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    sub->add_option("--transitions", *transitions)->required();
    sub->add_option("--qa", *qa)->required();
    sub->add_option("--out", *out)->required();
    sub->callback([=, &g] {
      Gateways gws(g);
      const fs::path in = *transitions;
      const ImageStore images = StoreFor(in);
      filter::Judge judge{gws.For("judge"), images};
      auto qas = LoadQaPairs(*qa);
      const auto by_id = filter::IndexById(LoadTransitions(in));
      const filter::StageReport report =
          stage == "self-check"
              ? filter::RunSelfCheckStage(qas, by_id, judge, g.concurrency)
              : filter::RunRelevanceStage(qas, by_id, judge, g.concurrency);
      std::sort(qas.begin(), qas.end(),
                [](const QAPair& a, const QAPair& b) { return a.id < b.id; });
      SaveJsonl(*out, qas);
      PrintJson(filter::ToJson(report));
    });
  }

  {
    auto* sub = cmd->add_subcommand("select-best", "Best-of-n descriptions");
    auto transitions = std::make_shared<std::string>();
    auto descriptions = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    sub->add_option("--transitions", *transitions)->required();
    sub->add_option("--descriptions", *descriptions)->required();
    sub->add_option("--out", *out)->required();
    sub->callback([=, &g] {
      Gateways gws(g);
      const fs::path in = *transitions;
      const ImageStore images = StoreFor(in);
      filter::Judge judge{gws.For("judge"), images};
      auto selected = filter::RunSelectBestStage(
          LoadDescriptions(*descriptions), filter::IndexById(LoadTransitions(in)),
          judge, g.concurrency);
      SaveJsonl(*out, selected);
      int n = 0;
      for (const auto& d : selected) n += d.selected;
      PrintJson({{"candidates", selected.size()}, {"selected", n}});
    });
  }

  {
    auto* sub = cmd->add_subcommand("ingest-human", "Apply human verdicts");
    auto qa = std::make_shared<std::string>();
    auto verdicts = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto survivors = std::make_shared<std::string>();
    sub->add_option("--qa", *qa)->required();
    sub->add_option("--verdicts", *verdicts, "verdicts.jsonl")->required();
    sub->add_option("--out", *out, "all QAs with human flags")->required();
    sub->add_option("--survivors", *survivors, "benchmark-eligible QAs");
    sub->callback([=] {
      std::vector<QAPair> reviewed;
      for (const QAPair& q : LoadQaPairs(*qa)) {
        if (q.flags.self_check_passed == Flag::kPass &&
            q.flags.relevance_passed == Flag::kPass) {
          reviewed.push_back(q);
        }
      }
      auto result = filter::IngestHumanVerdicts(
          reviewed, LoadJsonl<filter::HumanVerdict>(*verdicts));
      std::map<std::string, QAPair> merged;
      for (QAPair& q : LoadQaPairs(*qa)) merged[q.id] = q;
      for (QAPair& q : result.qas) merged[q.id] = q;
      std::vector<QAPair> all;
      for (auto& [id, q] : merged) all.push_back(q);
      SaveJsonl(*out, all);
      if (!survivors->empty()) SaveJsonl(*survivors, Eligible(all));
      json report = filter::ToJson(result.report);
      report["warnings"] = result.warnings;
      report["eligible"] = Eligible(all).size();
      PrintJson(report);
    });
  }
}

void AddEval(CLI::App& app, Globals& g) {
  auto* cmd = app.add_subcommand("eval", "Benchmark evaluation");
  cmd->require_subcommand(1);
  {
    auto* sub = cmd->add_subcommand("gen", "Next-state generation");
    auto transitions = std::make_shared<std::string>();
    auto descriptions = std::make_shared<std::string>();
    auto model_endpoint = std::make_shared<std::string>();
    auto judge_endpoint = std::make_shared<std::string>();
    auto model_name = std::make_shared<std::string>("model");
    auto out = std::make_shared<std::string>();
    auto samples = std::make_shared<std::string>();
    sub->add_option("--transitions", *transitions)->required();
    sub->add_option("--descriptions", *descriptions,
                    "descriptions with one selected per transition")
        ->required();
    sub->add_option("--model-endpoint", *model_endpoint);
    sub->add_option("--judge-endpoint", *judge_endpoint);
    sub->add_option("--model-name", *model_name);
    sub->add_option("--out", *out, "report.json")->required();
    sub->add_option("--samples", *samples,
                    "per-sample predictions and judgments (JSONL)");
    sub->callback([=, &g] {
      Gateways gws(g);
      const fs::path in = *transitions;
      const ImageStore images = StoreFor(in);
      auto& model = gws.For("model", *model_endpoint);
      auto& judge = gws.For("judge", *judge_endpoint);
      auto result = bench::RunGenEval(LoadTransitions(in),
                                      LoadDescriptions(*descriptions), model,
                                      judge, images, *model_name, g.concurrency);
      json report = bench::ToJson(result.report);
      report["model"] = *model_name;
      WriteFileText(*out, report.dump(2) + "\n");
      if (!samples->empty()) {
        std::vector<json> lines;
        for (const auto& s : result.samples) lines.push_back(bench::ToJson(s));
        WriteJsonl(*samples, lines);
      }
      PrintJson(report);
    });
  }
  {
    auto* sub = cmd->add_subcommand("qa", "Next-state QA");
    auto transitions = std::make_shared<std::string>();
    auto qa = std::make_shared<std::string>();
    auto model_endpoint = std::make_shared<std::string>();
    auto model_name = std::make_shared<std::string>("model");
    auto out = std::make_shared<std::string>();
    auto results = std::make_shared<std::string>();
    auto all = std::make_shared<bool>(false);
    sub->add_option("--transitions", *transitions)->required();
    sub->add_option("--qa", *qa)->required();
    sub->add_option("--model-endpoint", *model_endpoint);
    sub->add_option("--model-name", *model_name);
    sub->add_option("--out", *out, "report.json")->required();
    sub->add_option("--results", *results, "per-QA results (JSONL)");
    sub->add_flag("--all", *all,
                  "evaluate every QA, not only benchmark-eligible ones");
    sub->callback([=, &g] {
      Gateways gws(g);
      const fs::path in = *transitions;
      const ImageStore images = StoreFor(in);
      auto qas = LoadQaPairs(*qa);
      if (!*all) qas = Eligible(qas);
      auto result = bench::RunQaEval(LoadTransitions(in), qas,
                                     gws.For("model", *model_endpoint), images,
                                     g.concurrency);
      json report = bench::ToJson(result.report);
      report["model"] = *model_name;
      WriteFileText(*out, report.dump(2) + "\n");
      if (!results->empty()) SaveJsonl(*results, result.results);
      PrintJson(report);
    });
  }
}

std::vector<arena::MatchRecord> FoldMatches(const fs::path& path) {
  std::vector<arena::MatchRecord> out;
  std::map<std::string, std::size_t> index;
  for (const JsonlRecord& r : ReadJsonl(path)) {
    auto m = r.value.get<arena::MatchRecord>();
    auto it = index.find(m.match_id);
    if (it == index.end()) {
      index[m.match_id] = out.size();
      out.push_back(m);
    } else if (!out[it->second].decided()) {
      out[it->second].winner = m.winner;
    }
  }
  return out;
}

void AddArena(CLI::App& app, Globals& g) {
  {
    auto* cmd = app.add_subcommand("elo", "ELO ratings from a match log");
    auto matches = std::make_shared<std::string>();
    auto cfg = std::make_shared<arena::EloConfig>();
    auto skip_pending = std::make_shared<bool>(false);
    cmd->add_option("--matches", *matches)->required();
    cmd->add_option("--k", cfg->k_factor, "K-factor");
    cmd->add_option("--permutations", cfg->permutations);
    cmd->add_option("--initial", cfg->initial_rating);
    cmd->add_flag("--skip-pending", *skip_pending,
                  "ignore undecided matches instead of failing");
    cmd->callback([=, &g] {
      arena::EloConfig c = *cfg;
      c.seed = g.seed;
      c.concurrency = g.concurrency;
      auto log = FoldMatches(*matches);
      if (*skip_pending) {
        std::erase_if(log, [](const auto& m) { return !m.decided(); });
      }
      json out = json::object();
      for (const auto& [model, r] : arena::ComputeElo(log, c)) {
        out[model] = {{"mean", r.mean}, {"std", r.std}};
      }
      PrintJson(out);
    });
  }
  {
    auto* cmd = app.add_subcommand("sample-matches",
                                   "Sample pending matches from model outputs");
    auto outputs = std::make_shared<std::vector<std::string>>();
    auto n = std::make_shared<int>(0);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--outputs", *outputs,
                    "JSONL with item_id/model/output or eval gen samples")
        ->required();
    cmd->add_option("--n", *n)->required();
    cmd->add_option("--out", *out, "matches.jsonl")->required();
    cmd->callback([=, &g] {
      std::vector<arena::ModelOutput> all;
      for (const std::string& path : *outputs) {
        for (const JsonlRecord& r : ReadJsonl(path)) {
          const json& j = r.value;
          if (j.contains("error")) continue;
          arena::ModelOutput o;
          o.item_id = j.contains("item_id") ? j["item_id"].get<std::string>()
                                            : j.at("transition_id").get<std::string>();
          o.model = j.at("model").get<std::string>();
          o.output = j.contains("output") ? j["output"].get<std::string>()
                                          : j.at("prediction").get<std::string>();
          all.push_back(std::move(o));
        }
      }
      auto matches = arena::SampleMatches(all, *n, g.seed);
      SaveJsonl(*out, matches);
      PrintJson({{"matches", matches.size()}});
    });
  }
}

void AddAgent(CLI::App& app, Globals& g) {
  auto* agent = app.add_subcommand("agent", "Model-based policy");
  agent->require_subcommand(1);
  auto* cmd = agent->add_subcommand("run", "Run episodes");
  auto env = std::make_shared<std::string>("mock");
  auto tasks = std::make_shared<std::string>();
  auto trace_dir = std::make_shared<std::string>();
  auto cfg = std::make_shared<policy::PolicyConfig>();
  auto wm_mode = std::make_shared<std::string>("separate");
  auto only = std::make_shared<std::vector<std::string>>();
  cmd->add_option("--env", *env)->check(CLI::IsMember({"mock"}));
  cmd->add_option("--tasks", *tasks, "task file (JSON)")->required();
  cmd->add_option("--k", cfg->k);
  cmd->add_option("--max-steps", cfg->max_steps);
  cmd->add_option("--wm-mode", *wm_mode)->check(CLI::IsMember({"separate", "fused"}));
  cmd->add_option("--task", *only, "run only these task ids");
  cmd->add_option("--trace", *trace_dir, "output directory")->required();
  cmd->callback([=, &g] {
    Gateways gws(g);
    policy::PolicyConfig c = *cfg;
    if (auto v = gws.config().Get("policy", "wm_mode"); v && *wm_mode == "separate") {
      *wm_mode = *v;
    }
    auto mode = policy::WmModeFromString(*wm_mode);
    if (!mode) throw PreconditionError("wm_mode must be separate or fused");
    c.wm_mode = *mode;
    const auto task_list = policy::LoadFsmTasks(*tasks);
    policy::PolicyGateways pg{gws.For("proposal"), gws.For("world_model"),
                              gws.For("value")};
    std::vector<json> traces;
    int successes = 0;
    for (const auto& task : task_list) {
      if (!only->empty() &&
          std::find(only->begin(), only->end(), task.id) == only->end()) {
        continue;
      }
      policy::FsmEnvironment fsm(task_list);
      auto trace = policy::RunEpisode(fsm, task.id, c, pg);
      successes += trace.outcome == policy::Outcome::kSuccess;
      traces.push_back(policy::ToJson(trace));
    }
    WriteJsonl(fs::path(*trace_dir) / "traces.jsonl", traces);
    PrintJson({{"episodes", traces.size()}, {"success", successes}});
  });
}

void AddServe(CLI::App& app, Globals& g) {
  auto* cmd = app.add_subcommand("serve", "Review and arena HTTP service");
  auto data = std::make_shared<std::string>();
  auto host = std::make_shared<std::string>("127.0.0.1");
  auto port = std::make_shared<int>(8080);
  auto static_dir = std::make_shared<std::string>();
  auto cfg = std::make_shared<svc::ServiceConfig>();
  cmd->add_option("--data", *data, "data directory")->required();
  cmd->add_option("--host", *host);
  cmd->add_option("--port", *port);
  cmd->add_option("--static", *static_dir, "UI directory served at /");
  cmd->add_flag("--allow-ties", cfg->allow_ties);
  cmd->add_option("--k", cfg->elo.k_factor);
  cmd->add_option("--permutations", cfg->elo.permutations);
  cmd->callback([=, &g] {
    svc::ServiceConfig c = *cfg;
    if (!g.config_path.empty()) {
      const Config config = Config::Load(g.config_path);
      c.allow_ties = config.GetBool("svc", "allow_ties", c.allow_ties);
    }
    c.data_dir = *data;
    c.elo.seed = g.seed;
    svc::ServiceCore core(c);
    svc::HttpServer server(core, *static_dir);
    server.Run(*host, *port);
  });
}

void AddUtilities(CLI::App& app, Globals& g) {
  {
    auto* cmd = app.add_subcommand("validate", "Check manifest invariants");
    auto transitions = std::make_shared<std::string>();
    cmd->add_option("--transitions", *transitions)->required();
    cmd->callback([=] {
      json problems = json::object();
      for (const Transition& t : LoadTransitions(*transitions)) {
        const auto report = ValidateTransition(t);
        if (report.empty()) continue;
        json codes = json::array();
        for (Violation v : report) codes.push_back(ToString(v));
        problems[t.id] = codes;
      }
      PrintJson(problems);
      if (!problems.empty()) throw PreconditionError("manifest has violations");
    });
  }
  {
    auto* cmd = app.add_subcommand("overlay", "Draw an action marker");
    auto image = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto tap = std::make_shared<std::vector<int>>();
    auto swipe = std::make_shared<std::vector<int>>();
    auto color = std::make_shared<std::string>();
    auto stroke = std::make_shared<int>(0);
    cmd->add_option("--image", *image)->required();
    cmd->add_option("--out", *out)->required();
    auto* tap_opt = cmd->add_option("--tap", *tap, "x y")->expected(2);
    auto* swipe_opt = cmd->add_option("--swipe", *swipe, "x1 y1 x2 y2")->expected(4);
    tap_opt->excludes(swipe_opt);
    cmd->add_option("--color", *color, "r,g,b[,a]");
    cmd->add_option("--stroke-width", *stroke);
    cmd->callback([=, &g] {
      overlay::OverlayStyle style =
          g.config_path.empty() ? overlay::OverlayStyle{}
                                : overlay::StyleFromConfig(Config::Load(g.config_path));
      if (!color->empty()) style.marker_color = overlay::ParseColor(*color);
      if (*stroke > 0) style.stroke_width = *stroke;
      const auto png = ReadFileBytes(*image);
      std::vector<std::uint8_t> rendered;
      if (tap->size() == 2) {
        rendered = overlay::RenderTapMarker(png, {(*tap)[0], (*tap)[1]}, style);
      } else if (swipe->size() == 4) {
        rendered = overlay::RenderSwipeArrow(png, {(*swipe)[0], (*swipe)[1]},
                                             {(*swipe)[2], (*swipe)[3]}, style);
      } else {
        throw PreconditionError("pass --tap or --swipe");
      }
      WriteFileBytes(*out, rendered);
    });
  }
}

}  // namespace
}  // namespace semwm

int main(int argc, char** argv) {
  using namespace semwm;
  CLI::App app{"Semantic world model toolkit for mobile GUI agents"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "INI configuration file");
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--concurrency", g.concurrency, "parallel workers");
  app.add_option("--mock-script", g.mock_script,
                 "serve every model call from a JSONL script");
  app.add_option("--audit", g.audit_path,
                 "audit log of outbound payloads ('' disables the file)");
  app.add_option("--log-level", g.log_level)
      ->check(CLI::IsMember({"debug", "info", "warn", "error", "off"}));
  app.parse_complete_callback(
      [&] { spdlog::set_level(spdlog::level::from_str(g.log_level)); });

  AddAnnotate(app, g);
  AddQaGen(app, g);
  AddFilter(app, g);
  AddEval(app, g);
  AddArena(app, g);
  AddAgent(app, g);
  AddServe(app, g);
  AddUtilities(app, g);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const semwm::Error& e) {
    spdlog::error("{}", e.what());
    return 1;
  } catch (const std::exception& e) {
    spdlog::error("unexpected: {}", e.what());
    return 2;
  }
  return 0;
}
