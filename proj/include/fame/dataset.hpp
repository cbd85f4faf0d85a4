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

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "fame/shape.hpp"

namespace fame {

struct LoadOptions {
  /// Run closest-point contact detection; sidecar contacts win per part pair.
  /// A sidecar may opt out with "auto_contacts": false.
  bool detect_contacts = true;
  /// Detection threshold as a fraction of the shape's bbox diagonal.
  double adjacency_fraction = 0.01;
};

/// Parses `<dir>/<id>.obj` + `<dir>/<id>.json` for every mesh in the
/// directory. Shapes come back sorted by id and validated.
std::vector<Shape> load_population(const std::filesystem::path& dir,
                                   const LoadOptions& opts = {});

Shape load_shape(const std::filesystem::path& obj_path,
                 const LoadOptions& opts = {});

/// Triangles grouped by OBJ group/object name, in first-appearance order.
std::vector<Part> parse_obj(std::istream& in, const std::string& source);

void write_obj(std::ostream& out, const Shape& shape);
nlohmann::json sidecar_json(const Shape& shape);
/// Writes `<dir>/<id>.obj` and `<dir>/<id>.json`.
void write_shape(const std::filesystem::path& dir, const Shape& shape);

nlohmann::json to_json(const Provenance& p);
Provenance provenance_from_json(const nlohmann::json& j);

}  // namespace fame
