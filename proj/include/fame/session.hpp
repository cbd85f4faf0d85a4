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

#pragma once

#include <condition_variable>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "fame/dataset.hpp"
#include "fame/evolution.hpp"

namespace fame {

enum class SessionStatus { AwaitingSelection, Evolving, Done, Error };

const char* to_string(SessionStatus s);
SessionStatus parse_session_status(std::string_view text);

struct GenerationSummary {
  int index = 0;
  std::vector<std::string> shape_ids;  // ranked
  std::vector<std::string> selected;

  bool operator==(const GenerationSummary&) const = default;
};

struct SessionState {
  std::string id;
  std::string dataset;
  EvolutionConfig config;
  std::vector<GenerationSummary> generations;
  SessionStatus status = SessionStatus::AwaitingSelection;
  std::string last_error;
};

nlohmann::json to_json(const SessionState& s);
SessionState session_from_json(const nlohmann::json& j);

/// Sessions under `root`, one directory each: session.json plus gen_<i>/
/// holding the shapes, thumbnails and manifest of every generation. All reads
/// go to disk, so a restarted store sees exactly what was committed.
class SessionStore {
 public:
  SessionStore(std::filesystem::path root, ModelSet models, LoadOptions load = {});
  ~SessionStore();

  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  /// Loads, labels and scores the population as generation 0. Throws
  /// DatasetInvalid.
  std::string create(const std::filesystem::path& dataset, EvolutionConfig config);

  SessionState state(const std::string& id) const;  // throws UnknownSession
  std::vector<std::string> list() const;

  /// Full listing of one generation. Throws UnknownGeneration.
  nlohmann::json generation(const std::string& id, int index) const;

  /// Starts the next iteration in the background and returns at once with the
  /// session marked Evolving. Throws WrongStatus, UnknownShapeId.
  SessionState advance(const std::string& id, const std::vector<std::string>& selected,
                       std::optional<std::set<Label>> labels = std::nullopt);

  /// Blocks until no iteration of the session is running.
  void wait(const std::string& id);

  /// On-disk artifact of one shape: "obj" or "png". Throws UnknownShapeId.
  std::filesystem::path artifact(const std::string& id, int index,
                                 const std::string& shape_id,
                                 const std::string& kind) const;

  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path dir_of(const std::string& id) const;
  void save(const SessionState& s) const;
  void write_generation_dir(const std::string& id, const Generation& g) const;
  void run_iteration(SessionState s, std::vector<std::string> selected);

  std::filesystem::path root_;
  ModelSet models_;
  LoadOptions load_;
  mutable std::mutex mutex_;
  std::condition_variable idle_;
  std::set<std::string> running_;
  std::vector<std::thread> workers_;
};

}  // namespace fame
