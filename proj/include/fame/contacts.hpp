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

#include <vector>

#include "fame/shape.hpp"

namespace fame {

struct ContactDetectionOptions {
  /// Parts above this triangle count are compared on surface samples.
  std::size_t exact_triangle_limit = 5000;
  std::size_t samples_per_part = 2048;
};

/// Closest point pair between two parts (exact or sampled, see options).
ClosestPoints closest_points_parts(const Part& a, const Part& b,
                                   const ContactDetectionOptions& opts = {});

/// One Single contact per part pair closer than `adjacency_eps`, placed at the
/// midpoint of the closest pair. Pairs are reported with part_a < part_b.
std::vector<ContactPoint> detect_contact_points(
    const Shape& shape, double adjacency_eps,
    const ContactDetectionOptions& opts = {});

/// 1% of the shape's bounding-box diagonal.
double default_adjacency_eps(const Shape& shape);

/// Detected contacts for pairs the user did not annotate, plus the user's.
std::vector<ContactPoint> merge_contacts(
    const std::vector<ContactPoint>& user,
    const std::vector<ContactPoint>& detected);

}  // namespace fame
