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

#include "fame/shape.hpp"

#include <algorithm>

#include "fame/error.hpp"

namespace fame {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingSidecar: return "MissingSidecar";
    case ErrorCode::DanglingPartReference: return "DanglingPartReference";
    case ErrorCode::MalformedContactKind: return "MalformedContactKind";
    case ErrorCode::MalformedFile: return "MalformedFile";
    case ErrorCode::UnknownPartId: return "UnknownPartId";
    case ErrorCode::EmptySelection: return "EmptySelection";
    case ErrorCode::DegenerateBBox: return "DegenerateBBox";
    case ErrorCode::AlignmentImpossible: return "AlignmentImpossible";
    case ErrorCode::NoContacts: return "NoContacts";
    case ErrorCode::NoAnchorLabels: return "NoAnchorLabels";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::MissingProvenance: return "MissingProvenance";
    case ErrorCode::NoApplicableModel: return "NoApplicableModel";
    case ErrorCode::EmptyGeneration: return "EmptyGeneration";
    case ErrorCode::DatasetInvalid: return "DatasetInvalid";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::WrongStatus: return "WrongStatus";
    case ErrorCode::UnknownShapeId: return "UnknownShapeId";
    case ErrorCode::UnknownGeneration: return "UnknownGeneration";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Part::Part(PartId id, std::vector<Triangle> triangles,
           std::optional<Label> label)
    : id_(std::move(id)),
      triangles_(std::move(triangles)),
      label_(std::move(label)),
      bbox_(Aabb::of(triangles_)) {
  if (triangles_.empty())
    throw Error(ErrorCode::InvalidArgument, "part has no triangles", id_);
}

double Part::area() const {
  double a = 0.0;
  for (const Triangle& t : triangles_) a += t.area();
  return a;
}

Part Part::with_label(std::optional<Label> label) const {
  Part p = *this;
  p.label_ = std::move(label);
  return p;
}

Part Part::with_id(PartId id) const {
  Part p = *this;
  p.id_ = std::move(id);
  return p;
}

Part Part::transformed(const Vec3& scale, const Vec3& translation) const {
  std::vector<Triangle> tris = triangles_;
  for (Triangle& t : tris)
    for (Vec3& p : t.v) p = scale.cwiseProduct(p) + translation;
  return Part(id_, std::move(tris), label_);
}

Part Part::scaled_about(const Vec3& pivot, const Vec3& scale) const {
  return transformed(scale, pivot - scale.cwiseProduct(pivot));
}

std::size_t expected_point_count(ContactKind kind) {
  switch (kind) {
    case ContactKind::Quad: return 4;
    case ContactKind::Pair: return 2;
    case ContactKind::Single: return 1;
  }
  return 0;
}

const char* to_string(ContactKind kind) {
  switch (kind) {
    case ContactKind::Quad: return "quad";
    case ContactKind::Pair: return "pair";
    case ContactKind::Single: return "single";
  }
  return "single";
}

std::optional<ContactKind> parse_contact_kind(std::string_view text) {
  if (text == "quad") return ContactKind::Quad;
  if (text == "pair") return ContactKind::Pair;
  if (text == "single") return ContactKind::Single;
  return std::nullopt;
}

const char* to_string(GroupOrigin origin) {
  switch (origin) {
    case GroupOrigin::Base: return "base";
    case GroupOrigin::Expanded: return "expanded";
    case GroupOrigin::SymmetrySet: return "symmetry_set";
    case GroupOrigin::SymmetrySingleton: return "symmetry_singleton";
    case GroupOrigin::Null: return "null";
  }
  return "base";
}

std::optional<std::size_t> Shape::find_part(const PartId& id) const {
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (parts[i].id() == id) return i;
  return std::nullopt;
}

std::size_t Shape::part_index(const PartId& id) const {
  if (auto i = find_part(id)) return *i;
  throw Error(ErrorCode::UnknownPartId, "unknown part id", this->id + ":" + id);
}

std::set<Label> Shape::labels() const {
  std::set<Label> out;
  for (const Part& p : parts)
    if (p.label()) out.insert(*p.label());
  return out;
}

Aabb Shape::bbox() const {
  Aabb box;
  for (const Part& p : parts) box.extend(p.bbox());
  return box;
}

void Shape::validate(const std::string& source) const {
  const std::string where = source.empty() ? id : source;
  std::set<PartId> ids;
  for (const Part& p : parts) {
    if (!ids.insert(p.id()).second)
      throw Error(ErrorCode::InvalidArgument, "duplicate part id",
                  where + ": parts." + p.id());
  }
  for (std::size_t i = 0; i < contacts.size(); ++i) {
    const ContactPoint& c = contacts[i];
    const std::string field = where + ": contacts[" + std::to_string(i) + "]";
    for (const PartId* pid : {&c.part_a, &c.part_b}) {
      if (!ids.count(*pid))
        throw Error(ErrorCode::DanglingPartReference,
                    "contact references a missing part", field + " -> " + *pid);
    }
    if (c.part_a == c.part_b)
      throw Error(ErrorCode::InvalidArgument, "contact joins a part to itself",
                  field);
    if (c.points.size() != expected_point_count(c.kind))
      throw Error(ErrorCode::MalformedContactKind,
                  "contact point count does not match its kind",
                  field + ".points (kind=" + to_string(c.kind) + ", got " +
                      std::to_string(c.points.size()) + ")");
  }
  for (std::size_t i = 0; i < symmetry_groups.size(); ++i) {
    const auto& g = symmetry_groups[i];
    const std::string field = where + ": symmetry[" + std::to_string(i) + "]";
    std::set<PartId> distinct(g.begin(), g.end());
    for (const PartId& pid : distinct) {
      if (!ids.count(pid))
        throw Error(ErrorCode::DanglingPartReference,
                    "symmetry group references a missing part",
                    field + " -> " + pid);
    }
    if (distinct.size() < 2)
      throw Error(ErrorCode::InvalidArgument,
                  "symmetry group needs two distinct parts", field);
  }
}

Aabb bbox_of(const std::set<PartId>& ids, const Shape& shape) {
  if (ids.empty())
    throw Error(ErrorCode::EmptySelection, "bbox of an empty part selection",
                shape.id);
  Aabb box;
  for (const PartId& id : ids) box.extend(shape.parts[shape.part_index(id)].bbox());
  return box;
}

ShapeView ShapeView::whole(const Shape& s) {
  ShapeView v{&s, {}};
  v.parts.resize(s.parts.size());
  for (std::size_t i = 0; i < s.parts.size(); ++i) v.parts[i] = i;
  return v;
}

ShapeView ShapeView::of(const Shape& s, const std::vector<PartId>& ids) {
  ShapeView v{&s, {}};
  for (const PartId& id : ids) v.parts.push_back(s.part_index(id));
  std::sort(v.parts.begin(), v.parts.end());
  v.parts.erase(std::unique(v.parts.begin(), v.parts.end()), v.parts.end());
  return v;
}

Aabb ShapeView::bbox() const {
  Aabb box;
  for (std::size_t i : parts) box.extend(shape->parts[i].bbox());
  return box;
}

std::set<Label> ShapeView::labels() const {
  std::set<Label> out;
  for (std::size_t i : parts)
    if (const auto& l = shape->parts[i].label()) out.insert(*l);
  return out;
}

std::vector<PartId> ShapeView::part_ids() const {
  std::vector<PartId> out;
  for (std::size_t i : parts) out.push_back(shape->parts[i].id());
  return out;
}

}  // namespace fame
