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

#include <array>
#include <bitset>
#include <cstdint>
#include <vector>

#include "fame/shape.hpp"

namespace fame {

inline constexpr int kSilhouetteSize = 64;
inline constexpr int kViewCount = 10;

using Silhouette = std::bitset<kSilhouetteSize * kSilhouetteSize>;

/// View directions: one vertex from each antipodal pair of a dodecahedron.
const std::array<Vec3, kViewCount>& canonical_views();

/// Orthographic binary image of the shape, centered on its bbox and scaled so
/// the bbox diagonal spans the image. Row 0 is the top.
Silhouette render_silhouette(const Shape& shape, const Vec3& view_dir);

/// Reduced light-field descriptor: silhouettes from the canonical views, no
/// rotation search (inputs are pre-aligned).
struct ShapeDescriptor {
  std::array<Silhouette, kViewCount> views;
};

ShapeDescriptor describe(const Shape& shape);

/// Mean over views of the fraction of differing pixels, in [0, 1].
double descriptor_distance(const ShapeDescriptor& a, const ShapeDescriptor& b);

using DistanceMatrix = std::vector<std::vector<double>>;

/// Farthest point sampling seeded at the farthest pair. Returns
/// ceil(keep_fraction * n) indices in selection order. `ids` breaks ties: the
/// lexicographically smaller id wins.
std::vector<std::size_t> farthest_point_order(const DistanceMatrix& d,
                                              const std::vector<std::string>& ids,
                                              double keep_fraction = 0.5);

std::size_t diversity_keep_count(std::size_t n, double keep_fraction);

std::vector<Shape> diversity_selection(const std::vector<Shape>& shapes,
                                       double keep_fraction = 0.5);

}  // namespace fame
