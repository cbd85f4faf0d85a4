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

#include "fame/session.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fame/dataset.hpp"
#include "fame/error.hpp"
#include "fame/png.hpp"

namespace fs = std::filesystem;

namespace fame {

const char* to_string(SessionStatus s) {
  switch (s) {
    case SessionStatus::AwaitingSelection: return "AwaitingSelection";
    case SessionStatus::Evolving: return "Evolving";
    case SessionStatus::Done: return "Done";
    case SessionStatus::Error: return "Error";
  }
  return "Error";
}

SessionStatus parse_session_status(std::string_view text) {
  for (auto s : {SessionStatus::AwaitingSelection, SessionStatus::Evolving,
                 SessionStatus::Done, SessionStatus::Error})
    if (text == to_string(s)) return s;
  throw Error(ErrorCode::MalformedFile, "unknown session status", std::string(text));
}

nlohmann::json to_json(const SessionState& s) {
  nlohmann::json gens = nlohmann::json::array();
  for (const GenerationSummary& g : s.generations)
    gens.push_back({{"index", g.index}, {"shapes", g.shape_ids}, {"selected", g.selected}});
  return {{"id", s.id},
          {"dataset", s.dataset},
          {"config", to_json(s.config)},
          {"generations", std::move(gens)},
          {"status", to_string(s.status)},
          {"last_error", s.last_error}};
}

SessionState session_from_json(const nlohmann::json& j) {
  SessionState s;
  try {
    s.id = j.at("id").get<std::string>();
    s.dataset = j.at("dataset").get<std::string>();
    s.config = config_from_json(j.at("config"));
    for (const auto& g : j.at("generations"))
      s.generations.push_back({g.at("index").get<int>(),
                               g.at("shapes").get<std::vector<std::string>>(),
                               g.at("selected").get<std::vector<std::string>>()});
    s.status = parse_session_status(j.at("status").get<std::string>());
    s.last_error = j.value("last_error", "");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedFile, "malformed session state", e.what());
  }
  return s;
}

namespace {

bool safe_name(const std::string& s) {
  if (s.empty() || s == "." || s == "..") return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
           c == '.' || c == '+';
  });
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(ErrorCode::MalformedFile, "cannot read file", p.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedFile, e.what(), p.string());
  }
}

}  // namespace

SessionStore::SessionStore(fs::path root, ModelSet models, LoadOptions load)
    : root_(std::move(root)), models_(std::move(models)), load_(load) {
  fs::create_directories(root_);
  // An iteration interrupted by a restart never committed its generation.
  for (const std::string& id : list()) {
    SessionState s = state(id);
    if (s.status == SessionStatus::Evolving) {
      s.status = SessionStatus::AwaitingSelection;
      save(s);
    }
  }
}

SessionStore::~SessionStore() {
  for (std::thread& t : workers_)
    if (t.joinable()) t.join();
}

fs::path SessionStore::dir_of(const std::string& id) const {
  if (!safe_name(id) || !fs::exists(root_ / id / "session.json"))
    throw Error(ErrorCode::UnknownSession, "no such session", id);
  return root_ / id;
}

void SessionStore::save(const SessionState& s) const {
  const fs::path dir = root_ / s.id;
  fs::create_directories(dir);
  const fs::path tmp = dir / "session.json.tmp";
  {
    std::ofstream out(tmp);
    out << to_json(s).dump(2) << '\n';
  }
  fs::rename(tmp, dir / "session.json");
}

void SessionStore::write_generation_dir(const std::string& id, const Generation& g) const {
  write_generation(root_ / id, g);
  const fs::path dir = root_ / id / ("gen_" + std::to_string(g.index));
  for (const ScoredShape& s : g.shapes) {
    std::ofstream out(dir / (s.shape.id + ".png"), std::ios::binary);
    out << thumbnail_png(s.shape);
  }
}

std::vector<std::string> SessionStore::list() const {
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(root_))
    if (entry.is_directory() && fs::exists(entry.path() / "session.json"))
      out.push_back(entry.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

SessionState SessionStore::state(const std::string& id) const {
  return session_from_json(read_json(dir_of(id) / "session.json"));
}

std::string SessionStore::create(const fs::path& dataset, EvolutionConfig config) {
  config.validate();
  std::vector<Shape> shapes;
  try {
    shapes = load_population(dataset, load_);
  } catch (const Error& e) {
    throw Error(ErrorCode::DatasetInvalid, e.what(),
                e.detail().empty() ? dataset.string() : e.detail());
  }
  if (shapes.size() < 2)
    throw Error(ErrorCode::DatasetInvalid, "a population needs at least two shapes",
                dataset.string());
  shapes = label_population(std::move(shapes), models_);

  Generation g0;
  g0.index = 0;
  g0.shapes = score_all(std::move(shapes), models_, config);
  rank(g0.shapes, config.ranking);

  std::string id;
  {
    std::lock_guard lock(mutex_);
    for (int n = 1;; ++n) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "s%04d", n);
      if (!fs::exists(root_ / buf)) {
        id = buf;
        break;
      }
    }
    fs::create_directories(root_ / id);
  }

  SessionState s;
  s.id = id;
  s.dataset = dataset.string();
  s.config = std::move(config);
  GenerationSummary summary{0, {}, {}};
  for (const ScoredShape& sh : g0.shapes) summary.shape_ids.push_back(sh.shape.id);
  s.generations.push_back(std::move(summary));
  write_generation_dir(id, g0);
  save(s);
  return id;
}

nlohmann::json SessionStore::generation(const std::string& id, int index) const {
  const fs::path manifest =
      dir_of(id) / ("gen_" + std::to_string(index)) / "manifest.json";
  if (index < 0 || !fs::exists(manifest))
    throw Error(ErrorCode::UnknownGeneration, "no such generation",
                id + "/" + std::to_string(index));
  return read_json(manifest);
}

fs::path SessionStore::artifact(const std::string& id, int index,
                                const std::string& shape_id,
                                const std::string& kind) const {
  const fs::path dir = dir_of(id) / ("gen_" + std::to_string(index));
  if (index < 0 || !fs::exists(dir))
    throw Error(ErrorCode::UnknownGeneration, "no such generation",
                id + "/" + std::to_string(index));
  const fs::path file = dir / (shape_id + "." + kind);
  if (!safe_name(shape_id) || (kind != "obj" && kind != "png") || !fs::exists(file))
    throw Error(ErrorCode::UnknownShapeId, "no such shape", shape_id);
  return file;
}

SessionState SessionStore::advance(const std::string& id,
                                   const std::vector<std::string>& selected,
                                   std::optional<std::set<Label>> labels) {
  std::lock_guard lock(mutex_);
  SessionState s = state(id);
  if (s.status != SessionStatus::AwaitingSelection || running_.count(id))
    throw Error(ErrorCode::WrongStatus, "session is not awaiting a selection",
                std::string(to_string(s.status)));
  const GenerationSummary& latest = s.generations.back();
  for (const std::string& sid : selected)
    if (std::find(latest.shape_ids.begin(), latest.shape_ids.end(), sid) ==
        latest.shape_ids.end())
      throw Error(ErrorCode::UnknownShapeId, "selected shape is not in the latest generation",
                  sid);
  std::set<std::string> unique(selected.begin(), selected.end());
  if (unique.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "select at least two parents");
  if (labels) s.config.required_labels = std::move(*labels);

  s.generations.back().selected = selected;
  s.status = SessionStatus::Evolving;
  s.last_error.clear();
  save(s);
  running_.insert(id);
  workers_.emplace_back(&SessionStore::run_iteration, this, s, selected);
  return s;
}

void SessionStore::run_iteration(SessionState s, std::vector<std::string> selected) {
  try {
    const int parent_index = s.generations.back().index;
    const fs::path parent_dir = root_ / s.id / ("gen_" + std::to_string(parent_index));
    LoadOptions exact = load_;
    exact.detect_contacts = false;
    std::vector<Shape> parents;
    for (const std::string& sid : selected)
      parents.push_back(load_shape(parent_dir / (sid + ".obj"), exact));

    Generation g = breed(parents, parent_index + 1, models_, s.config);
    write_generation_dir(s.id, g);
    GenerationSummary summary{g.index, {}, {}};
    for (const ScoredShape& sh : g.shapes) summary.shape_ids.push_back(sh.shape.id);
    s.generations.push_back(std::move(summary));
    s.status = g.index >= s.config.generations ? SessionStatus::Done
                                               : SessionStatus::AwaitingSelection;
  } catch (const Error& e) {
    // The previous generation stays usable; the client may pick again.
    s.status = SessionStatus::AwaitingSelection;
    s.generations.back().selected.clear();
    s.last_error = std::string(to_string(e.code())) + ": " + e.what();
  } catch (const std::exception& e) {
    s.status = SessionStatus::Error;
    s.last_error = e.what();
  }
  std::lock_guard lock(mutex_);
  save(s);
  running_.erase(s.id);
  idle_.notify_all();
}

void SessionStore::wait(const std::string& id) {
  std::unique_lock lock(mutex_);
  idle_.wait(lock, [&] { return running_.count(id) == 0; });
}

}  // namespace fame
