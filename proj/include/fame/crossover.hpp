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

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fame/part_groups.hpp"
#include "fame/shape.hpp"

namespace fame {

/// p -> scale (componentwise) * p + translation. Never rotates.
struct SimilarityTransform {
  Vec3 translation = Vec3::Zero();
  Vec3 scale = Vec3::Ones();

  Vec3 apply(const Vec3& p) const { return scale.cwiseProduct(p) + translation; }
  /// `next` applied after this transform.
  SimilarityTransform then(const SimilarityTransform& next) const {
    return {next.scale.cwiseProduct(translation) + next.translation,
            next.scale.cwiseProduct(scale)};
  }
};

struct CrossoverOptions {
  double revert_fraction = 0.05;     // of the receiving shape's bbox diagonal
  double proportion_factor = 3.0;
  double occupancy_iou = 0.3;
  double degenerate_offset = 1e-6;   // of the diagonal, per axis
  GroupOptions groups;
};

/// Centers the source box on the destination and scales the source's longest
/// axis to the destination's extent on that axis, keeping the aspect ratio.
/// Throws DegenerateBBox.
SimilarityTransform initial_alignment(const Aabb& src, const Aabb& dst);

struct ContactMatch {
  struct Entry {
    std::size_t source;
    std::size_t target;
    Vec3 source_point;
    Vec3 target_point;
    double distance;
  };
  std::vector<Entry> pairs;  // ascending by distance
  std::size_t n = 0;         // min(source count, target count)
};

/// Nearest target for every source point; the n closest pairs are kept.
/// Throws NoContacts.
ContactMatch match_contacts(std::span<const Vec3> source,
                            std::span<const Vec3> target);

/// Least-squares scale + translation taking matched source points onto their
/// targets. Per axis the scale is the average of per-pair scalings about the
/// source centroid weighted by squared offset; offsets below
/// degenerate_offset * diag are skipped and an axis without usable pairs (or
/// with a non-positive estimate) keeps scale 1.
SimilarityTransform refined_alignment(const ContactMatch& match,
                                      double diag = 1.0,
                                      double degenerate_offset = 1e-6);

double sum_squared_error(const ContactMatch& match, const SimilarityTransform& t);
double max_residual(const ContactMatch& match, const SimilarityTransform& t);

enum class PlacementChoice { Refined, Initial };

/// Refined iff max residual <= fraction * diag (boundary inclusive).
PlacementChoice accept_or_revert(double max_residual, double shape_bbox_diag,
                                 double fraction = 0.05);

struct RestoredPart {
  Part part;
  Vec3 cumulative_scale;
};

/// Labeled parts whose y/x or z/x scale ratio leaves [1/factor, factor] get
/// the offending axis rescaled about their bbox center back to ratio 1.
RestoredPart restore_proportions(const Part& part, const Vec3& cumulative_scale,
                                 double factor = 3.0);

/// Replaces `removed` on `receiver` with `incoming` taken from `donor`.
Shape place_group(const Shape& receiver, const PartGroup& removed,
                  const Shape& donor, const PartGroup& incoming,
                  std::string offspring_id, const CrossoverOptions& opts = {});

/// Two offspring: g_a replaced by g_b on s_a, and g_b replaced by g_a on s_b.
std::pair<Shape, Shape> exchange(const Shape& s_a, const PartGroup& g_a,
                                 const Shape& s_b, const PartGroup& g_b,
                                 const CrossoverOptions& opts = {});

struct InsertionAnchor {
  Label label;
  PartId part;         // adjacent labeled part in the donor
  Vec3 translation;    // part centroid - group centroid
};

std::vector<InsertionAnchor> insertion_anchors(const Shape& donor,
                                               const PartGroup& g);

struct InsertionSite {
  Vec3 position;                           // where the group centroid goes
  std::vector<std::pair<Label, PartId>> anchors;  // chosen part per label
  double cost = 0.0;
};

/// Candidate positions centroid(r) - v for every anchor vector v and every
/// receiver part r carrying v's label; picks the one whose average anchor
/// vector is closest to the donor's. Throws NoAnchorLabels.
InsertionSite locate_insertion(const Shape& donor, const PartGroup& g,
                               const Shape& receiver);

/// Adds g at the located site, or exchanges it with the receiver group that
/// already occupies that spot.
Shape insert(const Shape& donor, const PartGroup& g, const Shape& receiver,
             std::string offspring_id, const CrossoverOptions& opts = {});

}  // namespace fame
