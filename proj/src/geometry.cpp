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

#include "fame/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace fame {

Vec3 Triangle::normal() const {
  Vec3 n = (v[1] - v[0]).cross(v[2] - v[0]);
  const double len = n.norm();
  return len > 0.0 ? Vec3(n / len) : Vec3::Zero();
}

double Triangle::area() const {
  return 0.5 * (v[1] - v[0]).cross(v[2] - v[0]).norm();
}

Aabb Aabb::of(std::span<const Triangle> triangles) {
  Aabb box;
  for (const Triangle& t : triangles)
    for (const Vec3& p : t.v) box.extend(p);
  return box;
}

void Aabb::extend(const Vec3& p) {
  min = min.cwiseMin(p);
  max = max.cwiseMax(p);
}

void Aabb::extend(const Aabb& other) {
  if (other.empty()) return;
  min = min.cwiseMin(other.min);
  max = max.cwiseMax(other.max);
}

double Aabb::volume() const {
  if (empty()) return 0.0;
  const Vec3 e = extents();
  return e.x() * e.y() * e.z();
}

bool Aabb::contains(const Aabb& other) const {
  return (min.array() <= other.min.array()).all() &&
         (other.max.array() <= max.array()).all();
}

bool Aabb::intersects(const Aabb& other) const {
  return (min.array() <= other.max.array()).all() &&
         (other.min.array() <= max.array()).all();
}

double Aabb::squared_distance(const Aabb& other) const {
  double d2 = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double gap =
        std::max({0.0, other.min[k] - max[k], min[k] - other.max[k]});
    d2 += gap * gap;
  }
  return d2;
}

double intersection_over_union(const Aabb& a, const Aabb& b) {
  if (a.empty() || b.empty()) return 0.0;
  Aabb inter;
  inter.min = a.min.cwiseMax(b.min);
  inter.max = a.max.cwiseMin(b.max);
  if (inter.empty()) return 0.0;
  const double vi = inter.volume();
  const double vu = a.volume() + b.volume() - vi;
  return vu > 0.0 ? vi / vu : 0.0;
}

// Ericson, Real-Time Collision Detection, 5.1.5.
Vec3 closest_point_on_triangle(const Vec3& p, const Triangle& t) {
  const Vec3& a = t.v[0];
  const Vec3& b = t.v[1];
  const Vec3& c = t.v[2];
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;

  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return b;

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    const double denom = d1 - d3;
    return denom > 0.0 ? Vec3(a + (d1 / denom) * ab) : a;
  }

  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return c;

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    const double denom = d2 - d6;
    return denom > 0.0 ? Vec3(a + (d2 / denom) * ac) : a;
  }

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double denom = (d4 - d3) + (d5 - d6);
    return denom > 0.0 ? Vec3(b + ((d4 - d3) / denom) * (c - b)) : b;
  }

  const double sum = va + vb + vc;
  if (sum <= 0.0) {
    // Degenerate (collinear) triangle: fall back to its edges.
    ClosestPoints best = closest_points_segments(p, p, a, b);
    for (const auto& [s, e] : {std::pair{b, c}, std::pair{c, a}}) {
      ClosestPoints cand = closest_points_segments(p, p, s, e);
      if (cand.distance < best.distance) best = cand;
    }
    return best.on_b;
  }
  const double v = vb / sum;
  const double w = vc / sum;
  return a + ab * v + ac * w;
}

// Ericson 5.1.9.
ClosestPoints closest_points_segments(const Vec3& p0, const Vec3& p1,
                                      const Vec3& q0, const Vec3& q1) {
  const Vec3 d1 = p1 - p0;
  const Vec3 d2 = q1 - q0;
  const Vec3 r = p0 - q0;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  double s = 0.0;
  double t = 0.0;
  if (a <= 0.0 && e <= 0.0) {
    // both degenerate
  } else if (a <= 0.0) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= 0.0) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  ClosestPoints out;
  out.on_a = p0 + d1 * s;
  out.on_b = q0 + d2 * t;
  out.distance = (out.on_a - out.on_b).norm();
  return out;
}

namespace {

// Segment [p, q] against triangle t; returns the crossing point if any.
bool segment_hits_triangle(const Vec3& p, const Vec3& q, const Triangle& t,
                           Vec3& hit) {
  const Vec3 dir = q - p;
  const Vec3 e1 = t.v[1] - t.v[0];
  const Vec3 e2 = t.v[2] - t.v[0];
  const Vec3 h = dir.cross(e2);
  const double det = e1.dot(h);
  const double scale = e1.norm() * e2.norm() * dir.norm();
  if (std::abs(det) <= 1e-14 * scale) return false;  // parallel
  const double inv = 1.0 / det;
  const Vec3 s = p - t.v[0];
  const double u = inv * s.dot(h);
  if (u < 0.0 || u > 1.0) return false;
  const Vec3 qv = s.cross(e1);
  const double v = inv * dir.dot(qv);
  if (v < 0.0 || u + v > 1.0) return false;
  const double tt = inv * e2.dot(qv);
  if (tt < 0.0 || tt > 1.0) return false;
  hit = p + tt * dir;
  return true;
}

}  // namespace

ClosestPoints closest_points_triangles(const Triangle& a, const Triangle& b) {
  for (int i = 0; i < 3; ++i) {
    Vec3 hit;
    if (segment_hits_triangle(a.v[i], a.v[(i + 1) % 3], b, hit))
      return {hit, hit, 0.0};
    if (segment_hits_triangle(b.v[i], b.v[(i + 1) % 3], a, hit))
      return {hit, hit, 0.0};
  }

  // Near-ties keep the first candidate so results are stable under rigid
  // translation of both inputs.
  Aabb span;
  for (const Vec3& p : a.v) span.extend(p);
  for (const Vec3& p : b.v) span.extend(p);
  const double tie = 1e-12 * std::max(1.0, span.diagonal());
  ClosestPoints best;
  auto consider = [&best, tie](const Vec3& pa, const Vec3& pb) {
    const double d = (pa - pb).norm();
    if (d < best.distance - tie) best = {pa, pb, d};
  };
  for (const Vec3& p : a.v) consider(p, closest_point_on_triangle(p, b));
  for (const Vec3& p : b.v) consider(closest_point_on_triangle(p, a), p);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const ClosestPoints c = closest_points_segments(
          a.v[i], a.v[(i + 1) % 3], b.v[j], b.v[(j + 1) % 3]);
      consider(c.on_a, c.on_b);
    }
  }
  return best;
}

// Akenine-Moller separating axis test, closed on both sides.
bool triangle_intersects_box(const Triangle& t, const Aabb& box) {
  const Vec3 c = box.center();
  const Vec3 h = 0.5 * box.extents();
  const std::array<Vec3, 3> v = {t.v[0] - c, t.v[1] - c, t.v[2] - c};
  const std::array<Vec3, 3> edges = {v[1] - v[0], v[2] - v[1], v[0] - v[2]};

  auto separated_on = [&](const Vec3& axis) {
    if (axis.squaredNorm() < 1e-30) return false;
    const double p0 = v[0].dot(axis), p1 = v[1].dot(axis), p2 = v[2].dot(axis);
    const double r = h.x() * std::abs(axis.x()) + h.y() * std::abs(axis.y()) +
                     h.z() * std::abs(axis.z());
    return std::min({p0, p1, p2}) > r || std::max({p0, p1, p2}) < -r;
  };

  for (int k = 0; k < 3; ++k) {
    if (separated_on(Vec3::Unit(k))) return false;
  }
  if (separated_on(edges[0].cross(edges[1]))) return false;
  for (const Vec3& e : edges) {
    for (int k = 0; k < 3; ++k) {
      if (separated_on(Vec3::Unit(k).cross(e))) return false;
    }
  }
  return true;
}

std::vector<Triangle> box_triangles(const Vec3& lo, const Vec3& hi) {
  auto corner = [&](int i) {
    return Vec3(i & 1 ? hi.x() : lo.x(), i & 2 ? hi.y() : lo.y(),
                i & 4 ? hi.z() : lo.z());
  };
  // Quads listed counter-clockwise seen from outside.
  static constexpr int kFaces[6][4] = {
      {0, 2, 3, 1},  // -z
      {4, 5, 7, 6},  // +z
      {0, 1, 5, 4},  // -y
      {2, 6, 7, 3},  // +y
      {0, 4, 6, 2},  // -x
      {1, 3, 7, 5},  // +x
  };
  std::vector<Triangle> tris;
  tris.reserve(12);
  for (const auto& f : kFaces) {
    tris.push_back({{corner(f[0]), corner(f[1]), corner(f[2])}});
    tris.push_back({{corner(f[0]), corner(f[2]), corner(f[3])}});
  }
  return tris;
}

}  // namespace fame
