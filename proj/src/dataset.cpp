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

#include "fame/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "fame/contacts.hpp"
#include "fame/error.hpp"

namespace fame {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int resolve_index(const std::string& token, std::size_t n_vertices,
                  const std::string& where) {
  const std::string head = token.substr(0, token.find('/'));
  int idx = 0;
  try {
    idx = std::stoi(head);
  } catch (const std::exception&) {
    throw Error(ErrorCode::MalformedFile, "bad face index", where + ": " + token);
  }
  const int n = static_cast<int>(n_vertices);
  const int resolved = idx > 0 ? idx - 1 : n + idx;
  if (idx == 0 || resolved < 0 || resolved >= n)
    throw Error(ErrorCode::MalformedFile, "face index out of range",
                where + ": " + token);
  return resolved;
}

Vec3 parse_point(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3)
    throw Error(ErrorCode::MalformedFile, "expected [x, y, z]", field);
  for (const auto& c : j)
    if (!c.is_number())
      throw Error(ErrorCode::MalformedFile, "non-numeric coordinate", field);
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json point_json(const Vec3& p) { return json::array({p.x(), p.y(), p.z()}); }

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<Part> parse_obj(std::istream& in, const std::string& source) {
  std::vector<Vec3> vertices;
  std::vector<std::string> order;
  std::map<std::string, std::vector<Triangle>> groups;
  std::string current = "default";
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = source + ":" + std::to_string(line_no);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z))
        throw Error(ErrorCode::MalformedFile, "bad vertex", where);
      vertices.emplace_back(x, y, z);
    } else if (tag == "g" || tag == "o") {
      std::string name;
      ls >> name;
      current = name.empty() ? "default" : name;
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (ls >> tok) idx.push_back(resolve_index(tok, vertices.size(), where));
      if (idx.size() < 3)
        throw Error(ErrorCode::MalformedFile, "face with fewer than 3 vertices",
                    where);
      if (!groups.count(current)) order.push_back(current);
      auto& tris = groups[current];
      for (std::size_t k = 1; k + 1 < idx.size(); ++k)
        tris.push_back({{vertices[idx[0]], vertices[idx[k]], vertices[idx[k + 1]]}});
    }
  }
  std::vector<Part> parts;
  for (const std::string& name : order) parts.emplace_back(name, groups[name]);
  return parts;
}

namespace {

Shape read_shape(const fs::path& obj_path, const LoadOptions& opts) {
  const std::string obj_name = obj_path.filename().string();
  fs::path sidecar_path = obj_path;
  sidecar_path.replace_extension(".json");
  const std::string side_name = sidecar_path.filename().string();
  if (!fs::exists(sidecar_path))
    throw Error(ErrorCode::MissingSidecar, "mesh has no sidecar metadata",
                side_name);

  std::ifstream obj_in(obj_path);
  if (!obj_in)
    throw Error(ErrorCode::MalformedFile, "cannot open mesh", obj_name);
  std::vector<Part> parts = parse_obj(obj_in, obj_name);
  if (parts.empty())
    throw Error(ErrorCode::MalformedFile, "mesh has no faces", obj_name);

  json side;
  {
    std::ifstream side_in(sidecar_path);
    try {
      side = json::parse(side_in);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::MalformedFile, "sidecar is not valid JSON",
                  side_name + ": " + e.what());
    }
  }
  if (!side.is_object())
    throw Error(ErrorCode::MalformedFile, "sidecar must be an object", side_name);

  Shape shape;
  shape.id = obj_path.stem().string();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < parts.size(); ++i) index[parts[i].id()] = i;

  auto require_part = [&](const std::string& pid, const std::string& field) {
    if (!index.count(pid))
      throw Error(ErrorCode::DanglingPartReference,
                  "sidecar references a part absent from the mesh",
                  side_name + ": " + field + " -> " + pid);
  };

  if (side.contains("category")) {
    if (!side["category"].is_string())
      throw Error(ErrorCode::MalformedFile, "category must be a string",
                  side_name + ": category");
    shape.categories.insert(side["category"].get<std::string>());
  }
  if (side.contains("categories")) {
    for (const auto& c : side["categories"]) shape.categories.insert(c.get<std::string>());
  }

  if (side.contains("labels")) {
    if (!side["labels"].is_object())
      throw Error(ErrorCode::MalformedFile, "labels must be an object",
                  side_name + ": labels");
    for (const auto& [pid, label] : side["labels"].items()) {
      require_part(pid, "labels." + pid);
      if (!label.is_string())
        throw Error(ErrorCode::MalformedFile, "label must be a string",
                    side_name + ": labels." + pid);
      parts[index[pid]] = parts[index[pid]].with_label(label.get<std::string>());
    }
  }

  std::vector<ContactPoint> user_contacts;
  if (side.contains("contacts")) {
    const json& cs = side["contacts"];
    if (!cs.is_array())
      throw Error(ErrorCode::MalformedFile, "contacts must be an array",
                  side_name + ": contacts");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const json& c = cs[i];
      const std::string field = "contacts[" + std::to_string(i) + "]";
      if (!c.is_object() || !c.contains("a") || !c.contains("b"))
        throw Error(ErrorCode::MalformedFile, "contact needs a and b",
                    side_name + ": " + field);
      ContactPoint cp;
      cp.part_a = c["a"].get<std::string>();
      cp.part_b = c["b"].get<std::string>();
      require_part(cp.part_a, field + ".a");
      require_part(cp.part_b, field + ".b");
      const std::string kind_text = c.value("kind", std::string("single"));
      const auto kind = parse_contact_kind(kind_text);
      if (!kind)
        throw Error(ErrorCode::MalformedContactKind, "unknown contact kind",
                    side_name + ": " + field + ".kind = " + kind_text);
      cp.kind = *kind;
      if (!c.contains("points") || !c["points"].is_array())
        throw Error(ErrorCode::MalformedFile, "contact needs points",
                    side_name + ": " + field + ".points");
      for (std::size_t k = 0; k < c["points"].size(); ++k)
        cp.points.push_back(parse_point(
            c["points"][k], side_name + ": " + field + ".points[" +
                                std::to_string(k) + "]"));
      if (cp.points.size() != expected_point_count(cp.kind))
        throw Error(ErrorCode::MalformedContactKind,
                    "contact point count does not match its kind",
                    side_name + ": " + field + ".points (kind=" + kind_text +
                        ", got " + std::to_string(cp.points.size()) + ")");
      user_contacts.push_back(std::move(cp));
    }
  }

  if (side.contains("symmetry")) {
    const json& sym = side["symmetry"];
    for (std::size_t i = 0; i < sym.size(); ++i) {
      std::vector<PartId> group;
      for (const auto& pid : sym[i]) {
        const std::string id = pid.get<std::string>();
        require_part(id, "symmetry[" + std::to_string(i) + "]");
        group.push_back(id);
      }
      shape.symmetry_groups.push_back(std::move(group));
    }
  }

  if (side.contains("provenance"))
    shape.provenance = provenance_from_json(side["provenance"]);

  shape.parts = std::move(parts);
  const bool detect = opts.detect_contacts && side.value("auto_contacts", true);
  if (detect) {
    const double eps = opts.adjacency_fraction * shape.bbox().diagonal();
    shape.contacts = merge_contacts(user_contacts,
                                    eps > 0.0 ? detect_contact_points(shape, eps)
                                              : std::vector<ContactPoint>{});
  } else {
    shape.contacts = std::move(user_contacts);
  }
  shape.validate(side_name);
  return shape;
}

}  // namespace

Shape load_shape(const fs::path& obj_path, const LoadOptions& opts) {
  try {
    return read_shape(obj_path, opts);
  } catch (const json::exception& e) {
    fs::path side = obj_path;
    side.replace_extension(".json");
    throw Error(ErrorCode::MalformedFile, "sidecar field has the wrong type",
                side.filename().string() + ": " + e.what());
  }
}

std::vector<Shape> load_population(const fs::path& dir, const LoadOptions& opts) {
  if (!fs::is_directory(dir))
    throw Error(ErrorCode::DatasetInvalid, "dataset directory not found",
                dir.string());
  std::vector<fs::path> meshes;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".obj")
      meshes.push_back(entry.path());
  }
  std::sort(meshes.begin(), meshes.end(), [](const fs::path& a, const fs::path& b) {
    return a.stem().string() < b.stem().string();
  });
  std::vector<Shape> shapes;
  shapes.reserve(meshes.size());
  for (const fs::path& m : meshes) shapes.push_back(load_shape(m, opts));
  return shapes;
}

void write_obj(std::ostream& out, const Shape& shape) {
  out << "# " << shape.id << "\n";
  std::size_t base = 1;
  for (const Part& p : shape.parts) {
    out << "g " << p.id() << "\n";
    for (const Triangle& t : p.triangles())
      for (const Vec3& v : t.v)
        out << "v " << fmt_double(v.x()) << ' ' << fmt_double(v.y()) << ' '
            << fmt_double(v.z()) << "\n";
    for (std::size_t k = 0; k < p.triangles().size(); ++k, base += 3)
      out << "f " << base << ' ' << base + 1 << ' ' << base + 2 << "\n";
  }
}

json to_json(const Provenance& p) {
  return {{"parents", p.parents},
          {"operation", p.operation},
          {"parent_a_parts", p.parent_a_parts},
          {"parent_b_parts", p.parent_b_parts},
          {"incoming_origin", to_string(p.incoming_origin)},
          {"refined", p.refined}};
}

Provenance provenance_from_json(const json& j) {
  Provenance p;
  p.parents = j.value("parents", std::vector<std::string>{});
  p.operation = j.value("operation", std::string{});
  p.parent_a_parts = j.value("parent_a_parts", std::vector<PartId>{});
  p.parent_b_parts = j.value("parent_b_parts", std::vector<PartId>{});
  const std::string origin = j.value("incoming_origin", std::string("base"));
  for (GroupOrigin o : {GroupOrigin::Base, GroupOrigin::Expanded,
                        GroupOrigin::SymmetrySet, GroupOrigin::SymmetrySingleton,
                        GroupOrigin::Null}) {
    if (origin == to_string(o)) p.incoming_origin = o;
  }
  p.refined = j.value("refined", false);
  return p;
}

json sidecar_json(const Shape& shape) {
  json j;
  const std::vector<std::string> cats(shape.categories.begin(), shape.categories.end());
  if (cats.size() == 1) j["category"] = cats.front();
  j["categories"] = cats;
  json labels = json::object();
  for (const Part& p : shape.parts)
    if (p.label()) labels[p.id()] = *p.label();
  j["labels"] = labels;
  json contacts = json::array();
  for (const ContactPoint& c : shape.contacts) {
    json pts = json::array();
    for (const Vec3& p : c.points) pts.push_back(point_json(p));
    contacts.push_back({{"a", c.part_a}, {"b", c.part_b},
                        {"kind", to_string(c.kind)}, {"points", pts}});
  }
  j["contacts"] = contacts;
  j["symmetry"] = shape.symmetry_groups;
  j["auto_contacts"] = false;
  if (shape.provenance) j["provenance"] = to_json(*shape.provenance);
  return j;
}

void write_shape(const fs::path& dir, const Shape& shape) {
  fs::create_directories(dir);
  {
    std::ofstream out(dir / (shape.id + ".obj"));
    write_obj(out, shape);
  }
  std::ofstream out(dir / (shape.id + ".json"));
  out << sidecar_json(shape).dump(2) << "\n";
}

}  // namespace fame
