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

#include <memory>
#include <string>
#include <vector>

#include "fame/sampling.hpp"
#include "fame/shape.hpp"

namespace fame {

/// Per-point likelihood of one proto-patch, over the points of a sample.
struct WeightField {
  Label patch_label;
  std::vector<double> weights;
};

/// Patch that absorbs weight no functional patch claims; never used as a
/// part label.
inline const Label kBackgroundPatch = "(background)";

/// Empirical CDFs of model scores for training shapes inside (D1) and outside
/// (D2) the category, with w1/w2 the fractions of each.
class ScoreDistributions {
 public:
  ScoreDistributions() = default;
  /// Throws InvalidArgument if either list is empty or non-finite.
  ScoreDistributions(std::vector<double> inside, std::vector<double> outside);

  const std::vector<double>& inside() const { return inside_; }
  const std::vector<double>& outside() const { return outside_; }
  double w1() const { return w1_; }
  double w2() const { return w2_; }

  /// P(X <= raw), ties inclusive.
  double cdf_inside(double raw) const;
  double cdf_outside(double raw) const;
  /// w1 * D1(raw) + w2 * D2(raw), in [0, 1].
  double normalize(double raw) const;

 private:
  std::vector<double> inside_;
  std::vector<double> outside_;
  double w1_ = 0.5;
  double w2_ = 0.5;
};

inline double normalize_score(const ScoreDistributions& d, double raw) {
  return d.normalize(raw);
}

/// A category functionality model. Implementations must allow concurrent
/// const calls.
class CategoryModel {
 public:
  virtual ~CategoryModel() = default;

  virtual const std::string& category() const = 0;
  /// Functional patch labels (the background patch is not listed).
  virtual std::vector<Label> proto_patch_labels() const = 0;

  /// One field per proto-patch plus the background field, over the sample
  /// points that belong to `view`, in sample order. Weights sum to 1 per point.
  virtual std::vector<WeightField> predict(const ShapeView& view,
                                           const PointSample& sample) const = 0;

  /// Higher is more functional; 0 when no required patch has support.
  virtual double raw_score(const ShapeView& view,
                           const PointSample& sample) const = 0;

  virtual bool has_functional_space(const Label& label) const = 0;
  /// Clearance region needed by the parts of `view` carrying `label`, as a
  /// union of boxes, each tagged with the part that requires it.
  /// Throws UnknownLabel if the model has no entry for the label.
  virtual std::vector<std::pair<std::size_t, Aabb>> functional_space(
      const Label& label, const ShapeView& view) const = 0;

  virtual const ScoreDistributions& distributions() const = 0;
};

using ModelSet = std::vector<std::shared_ptr<const CategoryModel>>;

/// Indices of the sample points lying on parts of `view`.
std::vector<std::size_t> view_points(const ShapeView& view, const PointSample& sample);

/// Samples the whole shape with `n_points` and predicts over all of it.
std::vector<WeightField> predict_proto_patches(const CategoryModel& model,
                                               const Shape& shape,
                                               std::size_t n_points = kDefaultSampleCount);

/// Each part takes the label whose mean in-part weight is largest, unless that
/// mean is below `threshold`. Ties go to the smaller label.
Shape label_parts(const Shape& shape, const PointSample& sample,
                  const std::vector<WeightField>& fields, double threshold = 0.5);

/// Models whose category is one of the shape's categories.
ModelSet applicable_models(const Shape& shape, const ModelSet& all);

}  // namespace fame
