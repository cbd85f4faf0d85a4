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

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <array>
#include <limits>
#include <span>
#include <vector>

namespace fame {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

struct Triangle {
  std::array<Vec3, 3> v;

  Vec3 normal() const;  // unit, zero for degenerate triangles
  double area() const;
  Vec3 centroid() const { return (v[0] + v[1] + v[2]) / 3.0; }
};

/// Axis-aligned box. A default-constructed box is empty (min > max) and
/// absorbs the first point passed to extend().
struct Aabb {
  Vec3 min = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 max = Vec3::Constant(-std::numeric_limits<double>::infinity());

  static Aabb of(std::span<const Triangle> triangles);

  bool empty() const { return (min.array() > max.array()).any(); }
  void extend(const Vec3& p);
  void extend(const Aabb& other);
  Vec3 center() const { return 0.5 * (min + max); }
  Vec3 extents() const { return max - min; }
  double diagonal() const { return empty() ? 0.0 : extents().norm(); }
  double volume() const;
  bool contains(const Aabb& other) const;
  bool intersects(const Aabb& other) const;
  /// Squared distance between the boxes, 0 when they overlap.
  double squared_distance(const Aabb& other) const;
};

double intersection_over_union(const Aabb& a, const Aabb& b);

struct ClosestPoints {
  Vec3 on_a;
  Vec3 on_b;
  double distance = std::numeric_limits<double>::infinity();
};

Vec3 closest_point_on_triangle(const Vec3& p, const Triangle& t);
ClosestPoints closest_points_segments(const Vec3& p0, const Vec3& p1,
                                      const Vec3& q0, const Vec3& q1);
/// Exact closest pair between two triangles (distance 0 when they intersect).
ClosestPoints closest_points_triangles(const Triangle& a, const Triangle& b);

/// Separating-axis overlap test between a closed box and a triangle.
bool triangle_intersects_box(const Triangle& t, const Aabb& box);

/// Twelve outward-facing triangles of the box [min, max].
std::vector<Triangle> box_triangles(const Vec3& min, const Vec3& max);

}  // namespace fame
