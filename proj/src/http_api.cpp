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

#include "fame/http_api.hpp"

#include <fstream>
#include <sstream>

#include "httplib.h"
#include "json.hpp"

#include "fame/error.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace fame {

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSession:
    case ErrorCode::UnknownGeneration:
    case ErrorCode::UnknownShapeId:
      return 404;
    case ErrorCode::WrongStatus:
      return 409;
    case ErrorCode::EmptyGeneration:
      return 422;
    default:
      return 400;
  }
}

namespace {

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code,
                const std::string& message, const std::string& detail) {
  send_json(res, {{"code", code}, {"message", message}, {"detail", detail}}, status);
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, "request body is not JSON", e.what());
  }
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const Error& e) {
      send_error(res, http_status(e.code()), to_string(e.code()), e.what(), e.detail());
    } catch (const std::exception& e) {
      send_error(res, 500, "Internal", e.what(), "");
    }
  };
}

int parse_index(const std::string& text) {
  try {
    return std::stoi(text);
  } catch (const std::exception&) {
    throw Error(ErrorCode::UnknownGeneration, "generation index is not a number", text);
  }
}

json listing(const SessionStore& store, const std::string& id, int index) {
  json g = store.generation(id, index);
  const std::string base = "/v1/shapes/" + id + "/" + std::to_string(index) + "/";
  for (json& s : g["shapes"]) {
    const std::string sid = s["id"].get<std::string>();
    s["mesh_url"] = base + sid + ".obj";
    s["thumbnail_url"] = base + sid + "/thumb.png";
  }
  return g;
}

}  // namespace

void mount_api(httplib::Server& server, SessionStore& store, fs::path dataset_root) {
  const fs::path data_root = fs::weakly_canonical(dataset_root);

  server.Post("/v1/sessions", guarded([&store, data_root](const httplib::Request& req,
                                                          httplib::Response& res) {
    const json body = parse_body(req);
    if (!body.contains("dataset") || !body["dataset"].is_string())
      throw Error(ErrorCode::InvalidArgument, "missing dataset", "dataset");
    const fs::path dataset =
        fs::weakly_canonical(data_root / body["dataset"].get<std::string>());
    const auto rel = dataset.lexically_relative(data_root);
    if (rel.empty() || *rel.begin() == "..")
      throw Error(ErrorCode::DatasetInvalid, "dataset lies outside the data root",
                  body["dataset"].get<std::string>());
    const EvolutionConfig config = config_from_json(body.value("config", json::object()));
    const std::string id = store.create(dataset, config);
    send_json(res, to_json(store.state(id)), 201);
  }));

  server.Get("/v1/sessions", guarded([&store](const httplib::Request&,
                                              httplib::Response& res) {
    send_json(res, {{"sessions", store.list()}});
  }));

  server.Get(R"(/v1/sessions/([A-Za-z0-9_.+-]+))",
             guarded([&store](const httplib::Request& req, httplib::Response& res) {
               send_json(res, to_json(store.state(req.matches[1])));
             }));

  server.Get(R"(/v1/sessions/([A-Za-z0-9_.+-]+)/generations/(-?\d+))",
             guarded([&store](const httplib::Request& req, httplib::Response& res) {
               send_json(res, listing(store, req.matches[1], parse_index(req.matches[2])));
             }));

  server.Post(R"(/v1/sessions/([A-Za-z0-9_.+-]+)/advance)",
              guarded([&store](const httplib::Request& req, httplib::Response& res) {
                const json body = parse_body(req);
                std::vector<std::string> selected;
                std::optional<std::set<Label>> labels;
                try {
                  selected = body.value("selected", std::vector<std::string>{});
                  if (body.contains("labels") && !body["labels"].is_null())
                    labels = body["labels"].get<std::set<Label>>();
                } catch (const json::exception& e) {
                  throw Error(ErrorCode::InvalidArgument, "malformed advance request",
                              e.what());
                }
                send_json(res, to_json(store.advance(req.matches[1], selected, labels)),
                          202);
              }));

  server.Get(R"(/v1/shapes/([A-Za-z0-9_.+-]+)/(\d+)/([A-Za-z0-9_.+-]+)\.obj)",
             guarded([&store](const httplib::Request& req, httplib::Response& res) {
               const fs::path p = store.artifact(req.matches[1], parse_index(req.matches[2]),
                                                 req.matches[3], "obj");
               res.set_content(read_file(p), "text/plain");
             }));

  server.Get(R"(/v1/shapes/([A-Za-z0-9_.+-]+)/(\d+)/([A-Za-z0-9_.+-]+)/thumb\.png)",
             guarded([&store](const httplib::Request& req, httplib::Response& res) {
               const fs::path p = store.artifact(req.matches[1], parse_index(req.matches[2]),
                                                 req.matches[3], "png");
               res.set_content(read_file(p), "image/png");
             }));
}

}  // namespace fame
