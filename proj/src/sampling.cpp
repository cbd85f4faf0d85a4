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

#include "fame/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fame {

namespace {

// R2 low-discrepancy sequence (plastic constant) for barycentric coordinates.
Vec2 r2(std::size_t i) {
  constexpr double g = 1.32471795724474602596;
  constexpr double a1 = 1.0 / g;
  constexpr double a2 = 1.0 / (g * g);
  const double n = static_cast<double>(i) + 0.5;
  return {std::fmod(0.5 + a1 * n, 1.0), std::fmod(0.5 + a2 * n, 1.0)};
}

}  // namespace

std::vector<Vec3> sample_part_surface(const Part& part, std::size_t count,
                                      std::vector<Vec3>* normals) {
  const auto& tris = part.triangles();
  std::vector<double> cdf(tris.size());
  double total = 0.0;
  for (std::size_t i = 0; i < tris.size(); ++i) {
    total += tris[i].area();
    cdf[i] = total;
  }
  std::vector<Vec3> out;
  out.reserve(count);
  if (normals) normals->clear();
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t ti = 0;
    if (total > 0.0) {
      const double u = (static_cast<double>(k) + 0.5) / count * total;
      ti = static_cast<std::size_t>(
          std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      ti = std::min(ti, tris.size() - 1);
    } else {
      ti = k % tris.size();
    }
    Vec2 uv = r2(k);
    if (uv.x() + uv.y() > 1.0) uv = Vec2(1.0 - uv.x(), 1.0 - uv.y());
    const Triangle& t = tris[ti];
    out.push_back(t.v[0] + uv.x() * (t.v[1] - t.v[0]) +
                  uv.y() * (t.v[2] - t.v[0]));
    if (normals) normals->push_back(t.normal());
  }
  return out;
}

PointSample sample_shape(const Shape& shape, std::size_t count) {
  const std::size_t n_parts = shape.parts.size();
  std::vector<double> areas(n_parts);
  for (std::size_t i = 0; i < n_parts; ++i) areas[i] = shape.parts[i].area();
  const double total = std::accumulate(areas.begin(), areas.end(), 0.0);

  // Largest-remainder allocation, seeded with one point per part.
  std::vector<std::size_t> alloc(n_parts, 0);
  std::size_t assigned = 0;
  if (count >= n_parts) {
    std::fill(alloc.begin(), alloc.end(), 1);
    assigned = n_parts;
  }
  const std::size_t free_points = count - assigned;
  std::vector<std::pair<double, std::size_t>> remainders;
  for (std::size_t i = 0; i < n_parts; ++i) {
    const double share = total > 0.0
                             ? areas[i] / total * free_points
                             : static_cast<double>(free_points) / n_parts;
    const auto whole = static_cast<std::size_t>(std::floor(share));
    alloc[i] += whole;
    assigned += whole;
    remainders.emplace_back(share - whole, i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < count && k < remainders.size(); ++k) {
    ++alloc[remainders[k].second];
    ++assigned;
  }

  PointSample s;
  s.positions.reserve(count);
  for (std::size_t i = 0; i < n_parts; ++i) {
    if (alloc[i] == 0) continue;
    std::vector<Vec3> normals;
    std::vector<Vec3> pts = sample_part_surface(shape.parts[i], alloc[i], &normals);
    const double per_point = areas[i] / static_cast<double>(alloc[i]);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      s.positions.push_back(pts[k]);
      s.normals.push_back(normals[k]);
      s.part.push_back(i);
      s.area.push_back(per_point);
    }
  }
  return s;
}

}  // namespace fame
