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

#include "fixtures.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>

#include "json.hpp"

#include "fame/contacts.hpp"
#include "fame/error.hpp"
#include "fame/reference_model.hpp"

#ifndef FAME_SOURCE_DIR
#define FAME_SOURCE_DIR "."
#endif

namespace fame::fixtures {

Part box(const PartId& id, const Vec3& lo, const Vec3& hi, std::optional<Label> label) {
  return Part(id, box_triangles(lo, hi), std::move(label));
}

Shape assemble(std::string id, std::string category, std::vector<Part> parts,
               std::vector<std::vector<PartId>> symmetry) {
  Shape s;
  s.id = std::move(id);
  s.categories = {std::move(category)};
  s.parts = std::move(parts);
  s.symmetry_groups = std::move(symmetry);
  s.contacts = detect_contact_points(s, default_adjacency_eps(s));
  s.validate(s.id);
  return s;
}

namespace {

struct Legs {
  double x0, x1, y0, y1;  // footprint the legs sit in
  double top;             // legs run from 0 to top
  double t;               // thickness
};

std::vector<Part> four_legs(const Legs& l) {
  return {box("leg1", {l.x0, l.y0, 0}, {l.x0 + l.t, l.y0 + l.t, l.top}),
          box("leg2", {l.x1 - l.t, l.y0, 0}, {l.x1, l.y0 + l.t, l.top}),
          box("leg3", {l.x0, l.y1 - l.t, 0}, {l.x0 + l.t, l.y1, l.top}),
          box("leg4", {l.x1 - l.t, l.y1 - l.t, 0}, {l.x1, l.y1, l.top})};
}

const std::vector<PartId> kLegIds = {"leg1", "leg2", "leg3", "leg4"};

template <typename... Vs>
std::vector<Part> join(std::vector<Part> a, Vs... rest) {
  (a.insert(a.end(), rest.begin(), rest.end()), ...);
  return a;
}

Shape chair(const std::string& id, double w, double d, double seat_h, double back_h,
            double t) {
  return assemble(
      id, "chair",
      join(std::vector<Part>{box("seat", {0, 0, seat_h}, {w, d, seat_h + 0.05}, "sitting"),
                             box("back", {0, d, seat_h}, {w, d + t, seat_h + back_h},
                                 "leaning")},
           four_legs({0, w, 0, d, seat_h, t})),
      {kLegIds});
}

Shape panel_chair(const std::string& id, double w, double d, double seat_h) {
  return assemble(
      id, "chair",
      {box("seat", {0.04, 0, seat_h}, {w - 0.04, d, seat_h + 0.05}, "sitting"),
       box("back", {0.04, d, seat_h}, {w - 0.04, d + 0.04, seat_h + 0.5}, "leaning"),
       box("side1", {0, 0, 0}, {0.04, d, seat_h + 0.2}),
       box("side2", {w - 0.04, 0, 0}, {w, d, seat_h + 0.2})},
      {{"side1", "side2"}});
}

Shape rail_chair(const std::string& id) {
  std::vector<Part> parts = {
      box("seat", {0, 0, 0.45}, {0.48, 0.46, 0.5}, "sitting"),
      box("back", {0, 0.46, 0.45}, {0.48, 0.5, 0.92}, "leaning"),
      box("rail", {0.04, 0.21, 0.15}, {0.44, 0.25, 0.19})};
  for (Part& leg : four_legs({0, 0.48, 0, 0.46, 0.45, 0.04})) parts.push_back(leg);
  return assemble(id, "chair", std::move(parts), {kLegIds});
}

Shape bench(const std::string& id, double w, bool with_back) {
  std::vector<Part> parts = {
      box("seat", {0, 0, 0.42}, {w, 0.4, 0.47}, "sitting"),
      box("end1", {0, 0.05, 0}, {0.05, 0.35, 0.42}),
      box("end2", {w - 0.05, 0.05, 0}, {w, 0.35, 0.42})};
  if (with_back) parts.push_back(box("back", {0, 0.4, 0.42}, {w, 0.44, 0.85}, "leaning"));
  return assemble(id, "chair", std::move(parts), {{"end1", "end2"}});
}

Shape stool(const std::string& id, double w, double h, int legs) {
  std::vector<Part> parts = {box("seat", {0, 0, h}, {w, w, h + 0.04}, "sitting")};
  if (legs == 4) {
    for (Part& leg : four_legs({0.02, w - 0.02, 0.02, w - 0.02, h, 0.035}))
      parts.push_back(leg);
    return assemble(id, "stool", std::move(parts), {kLegIds});
  }
  const double c = w / 2;
  parts.push_back(box("post", {c - 0.03, c - 0.03, 0.03}, {c + 0.03, c + 0.03, h}));
  parts.push_back(box("foot", {c - 0.2, c - 0.2, 0}, {c + 0.2, c + 0.2, 0.03}));
  return assemble(id, "stool", std::move(parts));
}

Shape table(const std::string& id, double w, double d, double h) {
  return assemble(
      id, "table",
      join(std::vector<Part>{box("top", {0, 0, h - 0.04}, {w, d, h}, "placement")},
           four_legs({0.03, w - 0.03, 0.03, d - 0.03, h - 0.04, 0.05})),
      {kLegIds});
}

Shape trestle_table(const std::string& id) {
  return assemble(id, "table",
                  {box("top", {0, 0, 0.7}, {1.4, 0.7, 0.74}, "placement"),
                   box("end1", {0.1, 0.05, 0}, {0.15, 0.65, 0.7}),
                   box("end2", {1.25, 0.05, 0}, {1.3, 0.65, 0.7}),
                   box("stretcher", {0.15, 0.33, 0.2}, {1.25, 0.37, 0.26})},
                  {{"end1", "end2"}});
}

Shape pedestal_table(const std::string& id) {
  return assemble(id, "table",
                  {box("top", {0, 0, 0.72}, {0.8, 0.8, 0.76}, "placement"),
                   box("post", {0.36, 0.36, 0.04}, {0.44, 0.44, 0.72}),
                   box("foot", {0.15, 0.15, 0}, {0.65, 0.65, 0.04})});
}

Shape desk(const std::string& id) {
  return assemble(id, "table",
                  {box("top", {0, 0, 0.72}, {1.2, 0.6, 0.76}, "placement"),
                   box("drawers", {0.8, 0.05, 0}, {1.15, 0.55, 0.72}, "storage"),
                   box("leg1", {0.05, 0.05, 0}, {0.1, 0.1, 0.72}),
                   box("leg2", {0.05, 0.5, 0}, {0.1, 0.55, 0.72})},
                  {{"leg1", "leg2"}});
}

Shape shelf(const std::string& id, double w, double h, int boards, bool back) {
  std::vector<Part> parts = {box("side1", {0, 0, 0}, {0.03, 0.3, h}),
                             box("side2", {w - 0.03, 0, 0}, {w, 0.3, h})};
  for (int b = 0; b < boards; ++b) {
    const double z = b * (h - 0.03) / (boards - 1);
    parts.push_back(box("board" + std::to_string(b + 1), {0.03, 0, z},
                        {w - 0.03, 0.3, z + 0.03}, "storage"));
  }
  if (back) parts.push_back(box("back", {0.03, 0.3, 0}, {w - 0.03, 0.32, h}));
  return assemble(id, "shelf", std::move(parts), {{"side1", "side2"}});
}

Shape cart(const std::string& id, double w, double d, int wheels, bool rail) {
  std::vector<Part> parts = {
      box("platform", {0, 0, 0.12}, {w, d, 0.17}, "placement"),
      box("handle", {0.1, d - 0.04, 0.17}, {w - 0.1, d, 0.95}, "grasping")};
  std::vector<PartId> wheel_ids;
  auto wheel = [&](double x, double y) {
    const std::string wid = "wheel" + std::to_string(wheel_ids.size() + 1);
    parts.push_back(box(wid, {x, y, 0}, {x + 0.06, y + 0.06, 0.12}, "rolling"));
    wheel_ids.push_back(wid);
  };
  wheel(0.03, 0.03);
  wheel(w - 0.09, 0.03);
  if (wheels == 4) {
    wheel(0.03, d - 0.09);
    wheel(w - 0.09, d - 0.09);
  } else {
    wheel(w / 2 - 0.03, d - 0.09);
  }
  if (rail) parts.push_back(box("rail", {0, 0, 0.17}, {w, 0.03, 0.3}));
  return assemble(id, "cart", std::move(parts), {wheel_ids});
}

}  // namespace

std::vector<Shape> corpus() {
  return {chair("chair_a", 0.5, 0.5, 0.45, 0.5, 0.04),
          chair("chair_b", 0.45, 0.42, 0.42, 0.42, 0.035),
          chair("chair_c", 0.55, 0.5, 0.48, 0.6, 0.05),
          panel_chair("chair_d", 0.5, 0.45, 0.44),
          rail_chair("chair_e"),
          bench("bench_a", 1.2, false),
          bench("bench_b", 1.4, true),
          stool("stool_a", 0.36, 0.65, 4),
          stool("stool_b", 0.4, 0.7, 1),
          stool("stool_c", 0.3, 0.5, 4),
          table("table_a", 1.2, 0.7, 0.75),
          table("table_b", 0.6, 0.6, 0.55),
          trestle_table("table_c"),
          pedestal_table("table_d"),
          desk("desk_a"),
          shelf("shelf_a", 0.8, 1.0, 3, false),
          shelf("shelf_b", 0.9, 1.4, 4, true),
          shelf("shelf_c", 0.6, 0.6, 2, false),
          cart("cart_a", 0.6, 0.9, 4, false),
          cart("cart_b", 0.5, 0.7, 3, true),
          cart("cart_c", 0.7, 1.0, 4, true)};
}

std::vector<Shape> population() {
  return {table("p_table", 1.0, 0.6, 0.74), cart("p_cart", 0.6, 0.9, 4, false),
          chair("p_chair", 0.5, 0.48, 0.45, 0.5, 0.04), stool("p_stool", 0.38, 0.62, 4)};
}

Shape find(const std::vector<Shape>& shapes, const std::string& id) {
  for (const Shape& s : shapes)
    if (s.id == id) return s;
  throw Error(ErrorCode::UnknownShapeId, "fixture not found", id);
}

ModelSet models() {
  static const ModelSet cached = [] {
    namespace fs = std::filesystem;
    const std::vector<Shape> shapes = corpus();
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(fs::path(FAME_SOURCE_DIR) / "data" / "models"))
      if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    ModelSet out;
    for (const fs::path& f : files) {
      std::ifstream in(f);
      auto m = std::make_shared<ReferenceModel>(
          ReferenceModel::from_json(nlohmann::json::parse(in)));
      std::vector<Shape> inside, outside;
      for (const Shape& s : shapes)
        (s.categories.count(m->category()) ? inside : outside).push_back(s);
      m->calibrate(inside, outside);
      out.push_back(std::move(m));
    }
    return out;
  }();
  return cached;
}

}  // namespace fame::fixtures
