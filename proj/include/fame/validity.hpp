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

#include "fame/category_model.hpp"
#include "fame/sampling.hpp"
#include "fame/shape.hpp"

namespace fame {

struct StabilityOptions {
  double ground_band = 0.01;       // of the bbox diagonal, above z_min
  double degenerate_reach = 0.01;  // of the diagonal, for point/segment supports
};

/// Convex hull (counter-clockwise, collinear points dropped).
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

/// Inside or on the boundary of a counter-clockwise convex polygon.
bool point_in_convex_polygon(const Vec2& p, const std::vector<Vec2>& hull,
                             double tolerance);

double distance_to_segment(const Vec2& p, const Vec2& a, const Vec2& b);

/// Mean of the parts' bbox centers.
Vec3 center_of_mass(const ShapeView& view);

/// Sample points of the view below z_min + band * diagonal, projected to xy.
std::vector<Vec2> ground_points(const ShapeView& view, const PointSample& sample,
                                double band = 0.01);

/// The view's center of mass projects into the convex hull of its
/// ground-touching sample points. Fewer than three non-collinear ground points
/// count as stable only when the projection is within degenerate_reach *
/// diagonal of the support.
bool check_stability(const ShapeView& view, const PointSample& sample,
                     const StabilityOptions& opts = {});

/// No triangle of any other part of the full shape enters the clearance
/// region the model needs for `label` on `view`. Labels absent from the view
/// are trivially clear. Throws UnknownLabel.
bool check_functional_space(const ShapeView& view, const Label& label,
                            const CategoryModel& model);

}  // namespace fame
