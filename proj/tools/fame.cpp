// Copyright 2026 The fame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: part groups, crossover, scoring, batch evolution and
// the HTTP service.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fame/crossover.hpp"
#include "fame/dataset.hpp"
#include "fame/error.hpp"
#include "fame/evolution.hpp"
#include "fame/http_api.hpp"
#include "fame/part_groups.hpp"
#include "fame/partial_match.hpp"
#include "fame/reference_model.hpp"
#include "fame/session.hpp"

// After the Eigen-based headers: resolv.h defines a _res macro.
#include "CLI11.hpp"
#include "httplib.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::set<fame::Label> split_labels(const std::string& text) {
  std::set<fame::Label> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(item);
  return out;
}

json score_json(const fame::Shape& shape, const fame::ModelSet& all, bool simplified) {
  const fame::ModelSet models = fame::applicable_models(shape, all);
  const fame::ShapeScore s = fame::score_shape(
      shape, models, simplified ? fame::ScoringMode::Simplified : fame::ScoringMode::Full);
  json per = json::array();
  for (const auto& r : s.per_model)
    per.push_back({{"category", r.category},
                   {"subset", r.best_subset},
                   {"raw", r.raw_score},
                   {"normalized", r.normalized_score},
                   {"evaluated", r.evaluated}});
  return {{"shape", shape.id},
          {"plausibility", s.plausibility},
          {"multi_functionality", s.multi_functionality},
          {"models", per}};
}

httplib::Server* g_server = nullptr;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Functionality-aware part-based shape evolution"};
  app.require_subcommand(1);
  std::string models_dir = "data/models";
  app.add_option("--models", models_dir, "Directory of category model configs");

  auto* groups = app.add_subcommand("groups", "List the part groups of a shape");
  std::string groups_obj;
  groups->add_option("shape", groups_obj, "OBJ file with a JSON sidecar")->required();

  auto* cross = app.add_subcommand("crossover", "Exchange one part group between two shapes");
  std::string cross_a, cross_b, cross_out = ".";
  std::size_t group_a = 0, group_b = 0;
  cross->add_option("a", cross_a)->required();
  cross->add_option("b", cross_b)->required();
  cross->add_option("--group-a", group_a, "Index into the groups of a");
  cross->add_option("--group-b", group_b, "Index into the groups of b");
  cross->add_option("--out", cross_out, "Output directory");

  auto* score = app.add_subcommand("score", "Functional plausibility of a shape");
  std::string score_obj;
  bool simplified = false;
  score->add_option("shape", score_obj)->required();
  score->add_flag("--simplified", simplified, "Score only the three provenance subsets");

  auto* evolve = app.add_subcommand("evolve", "Run a headless evolution");
  std::string dataset, labels, mode = "full", ranking = "plausibility", out_dir = "out";
  fame::EvolutionConfig config;
  evolve->add_option("--dataset", dataset, "Directory of OBJ + JSON shapes")->required();
  evolve->add_option("--labels", labels, "Required functionality labels, comma separated");
  evolve->add_option("--generations", config.generations)->check(CLI::PositiveNumber);
  evolve->add_option("--seed", config.seed);
  evolve->add_option("--mode", mode)->check(CLI::IsMember({"full", "simplified"}));
  evolve->add_option("--ranking", ranking)
      ->check(CLI::IsMember({"plausibility", "multi_functionality"}));
  evolve->add_option("--keep", config.diversity_keep_fraction, "Diversity keep fraction");
  evolve->add_option("--select", config.selection_size, "Parents kept per generation");
  evolve->add_option("--out", out_dir);

  auto* serve = app.add_subcommand("serve", "Serve the /v1 HTTP API");
  std::string host = "127.0.0.1", sessions = "sessions", data_root = "data";
  int port = 8080;
  serve->add_option("--host", host);
  serve->add_option("--port", port);
  serve->add_option("--sessions", sessions, "Session storage directory");
  serve->add_option("--data", data_root, "Root that dataset paths resolve against");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*groups) {
      const fame::Shape s = fame::load_shape(groups_obj);
      json out = json::array();
      for (const auto& g : fame::enumerate_part_groups(s)) out.push_back(fame::to_json(g));
      std::cout << out.dump(2) << '\n';
    } else if (*cross) {
      const fame::Shape a = fame::load_shape(cross_a);
      const fame::Shape b = fame::load_shape(cross_b);
      const auto ga = fame::enumerate_part_groups(a);
      const auto gb = fame::enumerate_part_groups(b);
      if (group_a >= ga.size() || group_b >= gb.size())
        throw fame::Error(fame::ErrorCode::InvalidArgument, "group index out of range");
      const auto [x, y] = fame::exchange(a, ga[group_a], b, gb[group_b]);
      fs::create_directories(cross_out);
      fame::write_shape(cross_out, x);
      fame::write_shape(cross_out, y);
      std::cout << x.id << '\n' << y.id << '\n';
    } else if (*score) {
      const fame::ModelSet models = fame::load_models(models_dir);
      fame::Shape s = fame::load_shape(score_obj);
      s = fame::label_population({s}, models).front();
      std::cout << score_json(s, models, simplified).dump(2) << '\n';
    } else if (*evolve) {
      config.required_labels = split_labels(labels);
      config.scoring_mode = fame::parse_scoring_mode(mode);
      config.ranking = fame::parse_ranking(ranking);
      config.validate();
      const fame::ModelSet models = fame::load_models(models_dir);
      const auto g0 = fame::label_population(fame::load_population(dataset), models);
      const auto gens =
          fame::evolve(g0, models, config, fame::top_k_selector(config.selection_size));
      fs::create_directories(out_dir);
      for (const auto& g : gens) {
        fame::write_generation(out_dir, g);
        std::cout << "gen_" << g.index << ": " << g.shapes.size() << " shapes\n";
      }
      std::ofstream(fs::path(out_dir) / "config.json") << fame::to_json(config).dump(2) << '\n';
    } else if (*serve) {
      fame::SessionStore store(sessions, fame::load_models(models_dir));
      httplib::Server server;
      fame::mount_api(server, store, data_root);
      g_server = &server;
      std::signal(SIGINT, [](int) { g_server->stop(); });
      std::signal(SIGTERM, [](int) { g_server->stop(); });
      std::cout << "listening on " << host << ":" << port << std::endl;
      if (!server.listen(host, port)) {
        std::cerr << "cannot listen on " << host << ":" << port << '\n';
        return 1;
      }
    }
  } catch (const fame::Error& e) {
    std::cerr << fame::to_string(e.code()) << ": " << e.what();
    if (!e.detail().empty()) std::cerr << " (" << e.detail() << ")";
    std::cerr << '\n';
    return 1;
  }
  return 0;
}
