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

#include "fame/contacts.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "fame/sampling.hpp"

namespace fame {

namespace {

ClosestPoints closest_exact(const Part& a, const Part& b) {
  const auto& ta = a.triangles();
  const auto& tb = b.triangles();
  std::vector<Aabb> boxes_b(tb.size());
  for (std::size_t j = 0; j < tb.size(); ++j)
    boxes_b[j] = Aabb::of(std::span(&tb[j], 1));

  Aabb span = a.bbox();
  span.extend(b.bbox());
  const double tie = 1e-12 * std::max(1.0, span.diagonal());

  ClosestPoints best;
  for (std::size_t i = 0; i < ta.size(); ++i) {
    const Aabb box_a = Aabb::of(std::span(&ta[i], 1));
    for (std::size_t j = 0; j < tb.size(); ++j) {
      const double lower = std::sqrt(box_a.squared_distance(boxes_b[j]));
      if (lower >= best.distance - tie) continue;
      const ClosestPoints c = closest_points_triangles(ta[i], tb[j]);
      if (c.distance < best.distance - tie) best = c;
    }
  }
  return best;
}

ClosestPoints closest_sampled(const Part& a, const Part& b, std::size_t n) {
  const std::vector<Vec3> pa = sample_part_surface(a, n);
  const std::vector<Vec3> pb = sample_part_surface(b, n);
  ClosestPoints best;
  for (const Vec3& p : pa) {
    for (const Vec3& q : pb) {
      const double d = (p - q).norm();
      if (d < best.distance) best = {p, q, d};
    }
  }
  return best;
}

}  // namespace

ClosestPoints closest_points_parts(const Part& a, const Part& b,
                                   const ContactDetectionOptions& opts) {
  if (a.triangles().size() <= opts.exact_triangle_limit &&
      b.triangles().size() <= opts.exact_triangle_limit)
    return closest_exact(a, b);
  return closest_sampled(a, b, opts.samples_per_part);
}

std::vector<ContactPoint> detect_contact_points(
    const Shape& shape, double adjacency_eps,
    const ContactDetectionOptions& opts) {
  // Visit parts in id order so (a, b) and (b, a) resolve identically.
  std::vector<std::size_t> order(shape.parts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return shape.parts[x].id() < shape.parts[y].id();
  });

  std::vector<ContactPoint> out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Part& a = shape.parts[order[i]];
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const Part& b = shape.parts[order[j]];
      if (std::sqrt(a.bbox().squared_distance(b.bbox())) >= adjacency_eps)
        continue;
      const ClosestPoints c = closest_points_parts(a, b, opts);
      if (c.distance < adjacency_eps) {
        out.push_back({a.id(), b.id(), ContactKind::Single,
                       {0.5 * (c.on_a + c.on_b)}});
      }
    }
  }
  return out;
}

double default_adjacency_eps(const Shape& shape) {
  return 0.01 * shape.bbox().diagonal();
}

std::vector<ContactPoint> merge_contacts(
    const std::vector<ContactPoint>& user,
    const std::vector<ContactPoint>& detected) {
  std::vector<ContactPoint> out = user;
  for (const ContactPoint& d : detected) {
    const bool overridden = std::any_of(
        user.begin(), user.end(),
        [&](const ContactPoint& u) { return u.connects(d.part_a, d.part_b); });
    if (!overridden) out.push_back(d);
  }
  return out;
}

}  // namespace fame
