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

#include <string>
#include <vector>

#include "fame/crossover.hpp"
#include "fame/descriptor.hpp"
#include "fame/partial_match.hpp"

// Slow, direct reference implementations for checking the library.
namespace fame::oracles {

struct ExhaustiveBest {
  bool any = false;  // some subset passed all validity checks
  double raw = 0.0;
  std::vector<std::size_t> parts;
};

/// Scores every non-empty part subset and keeps the best valid one.
ExhaustiveBest exhaustive_match(const ScoringContext& ctx, const CategoryModel& model);

/// Minimum SSE over a grid of 21 translations x 9 scales per axis centered on
/// `around` with the given steps. SSE separates per axis, so this equals the
/// minimum over the joint 21^3 x 9^3 grid.
double grid_sse(const ContactMatch& match, const SimilarityTransform& around, double t_step,
                double s_step);

/// Same grid, enumerated jointly. Slow; for cross-checking grid_sse.
double joint_grid_sse(const ContactMatch& match, const SimilarityTransform& around,
                      double t_step, double s_step);

/// Center of mass inside the hull of the ground points, decided by the
/// largest angular gap of directions from the center (inside iff no gap
/// exceeds pi). Collinear supports use the distance to the spanned segment.
bool stability(const ShapeView& view, const PointSample& sample, double ground_band = 0.01,
               double degenerate_reach = 0.01);

/// Greedy max-min selection, seeded at the farthest pair; ties go to smaller ids.
std::vector<std::size_t> farthest_points(const DistanceMatrix& d,
                                         const std::vector<std::string>& ids, std::size_t k);

}  // namespace fame::oracles
