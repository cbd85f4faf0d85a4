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

#include <optional>
#include <string>
#include <vector>

#include "fame/category_model.hpp"
#include "fame/shape.hpp"

namespace fame::fixtures {

Part box(const PartId& id, const Vec3& lo, const Vec3& hi,
         std::optional<Label> label = std::nullopt);

/// Shape from parts; contacts come from closest-point detection at 1% of the
/// diagonal, as on load.
Shape assemble(std::string id, std::string category, std::vector<Part> parts,
               std::vector<std::vector<PartId>> symmetry = {});

/// Chairs, benches, stools, tables, desks, shelves and carts, 3-7 parts each.
std::vector<Shape> corpus();

/// Four shapes for constrained evolution runs: a table, a cart, a chair and a
/// stool. Between them they carry placement, rolling, sitting and leaning.
std::vector<Shape> population();

Shape find(const std::vector<Shape>& shapes, const std::string& id);

/// Reference models from data/models, calibrated on the corpus.
ModelSet models();

}  // namespace fame::fixtures
