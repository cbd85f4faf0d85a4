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

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fame/geometry.hpp"

namespace fame {

using PartId = std::string;
using Label = std::string;

/// A named group of triangles. The bounding box is derived on construction
/// and every transform yields a new Part.
class Part {
 public:
  Part(PartId id, std::vector<Triangle> triangles,
       std::optional<Label> label = std::nullopt);

  const PartId& id() const { return id_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::optional<Label>& label() const { return label_; }
  const Aabb& bbox() const { return bbox_; }
  double area() const;

  Part with_label(std::optional<Label> label) const;
  Part with_id(PartId id) const;
  /// p -> scale (componentwise) * p + translation.
  Part transformed(const Vec3& scale, const Vec3& translation) const;
  /// Scales about `pivot` componentwise.
  Part scaled_about(const Vec3& pivot, const Vec3& scale) const;

 private:
  PartId id_;
  std::vector<Triangle> triangles_;
  std::optional<Label> label_;
  Aabb bbox_;
};

enum class ContactKind { Quad, Pair, Single };

std::size_t expected_point_count(ContactKind kind);
const char* to_string(ContactKind kind);
std::optional<ContactKind> parse_contact_kind(std::string_view text);

struct ContactPoint {
  PartId part_a;
  PartId part_b;
  ContactKind kind = ContactKind::Single;
  std::vector<Vec3> points;

  bool connects(const PartId& a, const PartId& b) const {
    return (part_a == a && part_b == b) || (part_a == b && part_b == a);
  }
  bool touches(const PartId& p) const { return part_a == p || part_b == p; }
};

enum class GroupOrigin { Base, Expanded, SymmetrySet, SymmetrySingleton, Null };

const char* to_string(GroupOrigin origin);

struct Provenance {
  std::vector<std::string> parents;  // [receiving shape, donor shape]
  std::string operation;             // "exchange" | "insert"
  /// Offspring part ids inherited from each parent.
  std::vector<PartId> parent_a_parts;
  std::vector<PartId> parent_b_parts;
  /// Origin of the donor group that was brought in.
  GroupOrigin incoming_origin = GroupOrigin::Base;
  bool refined = false;  // placement kept the refined alignment
};

struct Shape {
  std::string id;
  std::vector<Part> parts;
  std::vector<ContactPoint> contacts;
  std::vector<std::vector<PartId>> symmetry_groups;
  std::set<std::string> categories;
  std::optional<Provenance> provenance;

  std::optional<std::size_t> find_part(const PartId& id) const;
  std::size_t part_index(const PartId& id) const;  // throws UnknownPartId
  std::set<Label> labels() const;
  Aabb bbox() const;
  /// Throws DanglingPartReference / MalformedContactKind / InvalidArgument.
  void validate(const std::string& source = {}) const;
};

/// Axis-aligned box of the listed parts; throws EmptySelection.
Aabb bbox_of(const std::set<PartId>& parts, const Shape& shape);

/// A subset of a shape's parts, addressed by index into shape.parts.
struct ShapeView {
  const Shape* shape = nullptr;
  std::vector<std::size_t> parts;  // sorted, unique

  static ShapeView whole(const Shape& s);
  static ShapeView of(const Shape& s, const std::vector<PartId>& ids);

  bool empty() const { return parts.empty(); }
  Aabb bbox() const;
  std::set<Label> labels() const;
  std::vector<PartId> part_ids() const;
};

}  // namespace fame
