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

#include "fame/descriptor.hpp"

#include <algorithm>
#include <cmath>

#include "fame/error.hpp"

namespace fame {

const std::array<Vec3, kViewCount>& canonical_views() {
  static const std::array<Vec3, kViewCount> views = [] {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    const double inv = 1.0 / phi;
    std::array<Vec3, kViewCount> v = {
        Vec3(1, 1, 1),      Vec3(1, 1, -1),    Vec3(1, -1, 1),    Vec3(1, -1, -1),
        Vec3(0, inv, phi),  Vec3(0, inv, -phi), Vec3(inv, phi, 0), Vec3(inv, -phi, 0),
        Vec3(phi, 0, inv),  Vec3(phi, 0, -inv)};
    for (Vec3& d : v) d.normalize();
    return v;
  }();
  return views;
}

namespace {

double edge(const Vec2& a, const Vec2& b, const Vec2& p) {
  return (b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x());
}

}  // namespace

Silhouette render_silhouette(const Shape& shape, const Vec3& view_dir) {
  Silhouette img;
  if (shape.parts.empty()) return img;
  const Aabb box = shape.bbox();
  const Vec3 center = box.center();
  const double diag = box.diagonal();
  const double scale = diag > 0.0 ? 1.0 / diag : 1.0;

  const Vec3 d = view_dir.normalized();
  const Vec3 helper = std::abs(d.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
  const Vec3 u = helper.cross(d).normalized();
  const Vec3 v = d.cross(u);

  constexpr int n = kSilhouetteSize;
  auto project = [&](const Vec3& p) {
    const Vec3 q = (p - center) * scale;
    return Vec2((q.dot(u) + 0.5) * n, (0.5 - q.dot(v)) * n);
  };
  auto set = [&](int x, int y) {
    if (x >= 0 && x < n && y >= 0 && y < n) img.set(static_cast<std::size_t>(y * n + x));
  };

  for (const Part& part : shape.parts) {
    for (const Triangle& t : part.triangles()) {
      const Vec2 a = project(t.v[0]), b = project(t.v[1]), c = project(t.v[2]);
      // Vertices always mark their pixel so thin slivers are not lost.
      for (const Vec2* p : {&a, &b, &c})
        set(static_cast<int>(std::floor(p->x())), static_cast<int>(std::floor(p->y())));
      const double area = edge(a, b, c);
      if (area == 0.0) continue;
      const int x0 = std::max(0, static_cast<int>(std::floor(std::min({a.x(), b.x(), c.x()}))));
      const int x1 = std::min(n - 1, static_cast<int>(std::floor(std::max({a.x(), b.x(), c.x()}))));
      const int y0 = std::max(0, static_cast<int>(std::floor(std::min({a.y(), b.y(), c.y()}))));
      const int y1 = std::min(n - 1, static_cast<int>(std::floor(std::max({a.y(), b.y(), c.y()}))));
      const double sign = area > 0.0 ? 1.0 : -1.0;
      for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
          const Vec2 p(x + 0.5, y + 0.5);
          if (sign * edge(a, b, p) >= 0.0 && sign * edge(b, c, p) >= 0.0 &&
              sign * edge(c, a, p) >= 0.0)
            set(x, y);
        }
      }
    }
  }
  return img;
}

ShapeDescriptor describe(const Shape& shape) {
  ShapeDescriptor out;
  const auto& views = canonical_views();
  for (int i = 0; i < kViewCount; ++i) out.views[i] = render_silhouette(shape, views[i]);
  return out;
}

double descriptor_distance(const ShapeDescriptor& a, const ShapeDescriptor& b) {
  std::size_t differing = 0;
  for (int i = 0; i < kViewCount; ++i) differing += (a.views[i] ^ b.views[i]).count();
  return static_cast<double>(differing) /
         (static_cast<double>(kViewCount) * kSilhouetteSize * kSilhouetteSize);
}

std::size_t diversity_keep_count(std::size_t n, double keep_fraction) {
  if (!(keep_fraction > 0.0 && keep_fraction <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "keep fraction must lie in (0, 1]");
  if (n == 0) return 0;
  const auto k = static_cast<std::size_t>(std::ceil(keep_fraction * static_cast<double>(n) - 1e-9));
  return std::clamp<std::size_t>(k, 1, n);
}

std::vector<std::size_t> farthest_point_order(const DistanceMatrix& d,
                                              const std::vector<std::string>& ids,
                                              double keep_fraction) {
  const std::size_t n = d.size();
  const std::size_t k = diversity_keep_count(n, keep_fraction);
  if (n == 0) return {};
  if (ids.size() != n)
    throw Error(ErrorCode::InvalidArgument, "one id per row of the distance matrix");

  // Index order by id, so "first found" means smallest id.
  std::vector<std::size_t> by_id(n);
  for (std::size_t i = 0; i < n; ++i) by_id[i] = i;
  std::sort(by_id.begin(), by_id.end(),
            [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });

  std::vector<std::size_t> order;
  if (n == 1) return {0};
  std::size_t sa = by_id[0], sb = by_id[1];
  double far = -1.0;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      const double dist = d[by_id[x]][by_id[y]];
      if (dist > far) {
        far = dist;
        sa = by_id[x];
        sb = by_id[y];
      }
    }
  }
  order.push_back(sa);
  if (k >= 2) order.push_back(sb);

  std::vector<double> reach(n, std::numeric_limits<double>::infinity());
  std::vector<char> taken(n, 0);
  for (std::size_t s : order) {
    taken[s] = 1;
    for (std::size_t i = 0; i < n; ++i) reach[i] = std::min(reach[i], d[s][i]);
  }
  while (order.size() < k) {
    std::size_t pick = n;
    for (std::size_t i : by_id) {
      if (taken[i]) continue;
      if (pick == n || reach[i] > reach[pick]) pick = i;
    }
    order.push_back(pick);
    taken[pick] = 1;
    for (std::size_t i = 0; i < n; ++i) reach[i] = std::min(reach[i], d[pick][i]);
  }
  return order;
}

std::vector<Shape> diversity_selection(const std::vector<Shape>& shapes,
                                       double keep_fraction) {
  std::vector<ShapeDescriptor> desc;
  desc.reserve(shapes.size());
  for (const Shape& s : shapes) desc.push_back(describe(s));
  DistanceMatrix d(shapes.size(), std::vector<double>(shapes.size(), 0.0));
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    ids.push_back(shapes[i].id);
    for (std::size_t j = i + 1; j < shapes.size(); ++j)
      d[i][j] = d[j][i] = descriptor_distance(desc[i], desc[j]);
  }
  std::vector<Shape> out;
  for (std::size_t i : farthest_point_order(d, ids, keep_fraction)) out.push_back(shapes[i]);
  return out;
}

}  // namespace fame
