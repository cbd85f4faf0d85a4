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
#include <vector>

#include "fame/shape.hpp"

namespace fame {

/// Deterministic area-uniform surface sample of a whole shape. Every point
/// remembers the part it came from and the surface area it stands for.
struct PointSample {
  std::vector<Vec3> positions;
  std::vector<Vec3> normals;
  std::vector<std::size_t> part;  // index into shape.parts
  std::vector<double> area;       // area represented by the point

  std::size_t size() const { return positions.size(); }
};

/// Stratified sample of `count` points on one part's triangles.
std::vector<Vec3> sample_part_surface(const Part& part, std::size_t count,
                                      std::vector<Vec3>* normals = nullptr);

/// `count` points over the shape, split across parts by area (largest
/// remainder, at least one point per part when count allows it).
PointSample sample_shape(const Shape& shape, std::size_t count);

inline constexpr std::size_t kDefaultSampleCount = 2048;

}  // namespace fame
