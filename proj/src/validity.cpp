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

#include "fame/validity.hpp"

#include <algorithm>
#include <cmath>

#include "fame/error.hpp"

namespace fame {

namespace {

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

}  // namespace

// Andrew's monotone chain.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Vec2& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

bool point_in_convex_polygon(const Vec2& p, const std::vector<Vec2>& hull,
                             double tolerance) {
  const std::size_t n = hull.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = hull[i];
    const Vec2& b = hull[(i + 1) % n];
    const double len = (b - a).norm();
    if (cross(a, b, p) < -tolerance * len) return false;
  }
  return true;
}

double distance_to_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (a + t * ab - p).norm();
}

Vec3 center_of_mass(const ShapeView& view) {
  Vec3 c = Vec3::Zero();
  for (std::size_t i : view.parts) c += view.shape->parts[i].bbox().center();
  return view.parts.empty() ? c : Vec3(c / static_cast<double>(view.parts.size()));
}

std::vector<Vec2> ground_points(const ShapeView& view, const PointSample& sample,
                                double band) {
  const std::vector<std::size_t> idx = view_points(view, sample);
  std::vector<Vec2> out;
  if (idx.empty()) return out;
  double z_min = std::numeric_limits<double>::infinity();
  for (std::size_t k : idx) z_min = std::min(z_min, sample.positions[k].z());
  const double cutoff = z_min + band * view.bbox().diagonal();
  for (std::size_t k : idx) {
    const Vec3& p = sample.positions[k];
    if (p.z() < cutoff || p.z() == z_min) out.emplace_back(p.x(), p.y());
  }
  return out;
}

bool check_stability(const ShapeView& view, const PointSample& sample,
                     const StabilityOptions& opts) {
  if (view.empty()) return false;
  const double diag = view.bbox().diagonal();
  const std::vector<Vec2> ground = ground_points(view, sample, opts.ground_band);
  if (ground.empty()) return false;
  const Vec3 com = center_of_mass(view);
  const Vec2 c(com.x(), com.y());
  const std::vector<Vec2> hull = convex_hull(ground);
  if (hull.size() >= 3) return point_in_convex_polygon(c, hull, 1e-9 * diag);

  const double reach = opts.degenerate_reach * diag;
  if (hull.size() == 1) return (hull[0] - c).norm() <= reach;
  return distance_to_segment(c, hull[0], hull[1]) <= reach;
}

bool check_functional_space(const ShapeView& view, const Label& label,
                            const CategoryModel& model) {
  const auto regions = model.functional_space(label, view);
  const Shape& full = *view.shape;
  for (const auto& [owner, box] : regions) {
    for (std::size_t i = 0; i < full.parts.size(); ++i) {
      if (i == owner) continue;
      const Part& other = full.parts[i];
      if (!other.bbox().intersects(box)) continue;
      for (const Triangle& t : other.triangles())
        if (triangle_intersects_box(t, box)) return false;
    }
  }
  return true;
}

}  // namespace fame
