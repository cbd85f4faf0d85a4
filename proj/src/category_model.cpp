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

#include "fame/category_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fame/error.hpp"

namespace fame {

ScoreDistributions::ScoreDistributions(std::vector<double> inside,
                                       std::vector<double> outside)
    : inside_(std::move(inside)), outside_(std::move(outside)) {
  if (inside_.empty() || outside_.empty())
    throw Error(ErrorCode::InvalidArgument,
                "score distributions need inside and outside training scores");
  for (const auto* list : {&inside_, &outside_})
    for (double v : *list)
      if (!std::isfinite(v))
        throw Error(ErrorCode::InvalidArgument, "non-finite training score");
  std::sort(inside_.begin(), inside_.end());
  std::sort(outside_.begin(), outside_.end());
  const double total = static_cast<double>(inside_.size() + outside_.size());
  w1_ = static_cast<double>(inside_.size()) / total;
  w2_ = static_cast<double>(outside_.size()) / total;
}

namespace {

double empirical_cdf(const std::vector<double>& sorted, double x) {
  if (sorted.empty()) return 0.0;
  const auto upto = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
  return static_cast<double>(upto) / static_cast<double>(sorted.size());
}

}  // namespace

double ScoreDistributions::cdf_inside(double raw) const {
  return empirical_cdf(inside_, raw);
}

double ScoreDistributions::cdf_outside(double raw) const {
  return empirical_cdf(outside_, raw);
}

double ScoreDistributions::normalize(double raw) const {
  return w1_ * cdf_inside(raw) + w2_ * cdf_outside(raw);
}

std::vector<std::size_t> view_points(const ShapeView& view, const PointSample& sample) {
  std::vector<char> in_view(view.shape->parts.size(), 0);
  for (std::size_t i : view.parts) in_view[i] = 1;
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < sample.size(); ++k)
    if (in_view[sample.part[k]]) out.push_back(k);
  return out;
}

std::vector<WeightField> predict_proto_patches(const CategoryModel& model,
                                               const Shape& shape,
                                               std::size_t n_points) {
  const PointSample sample = sample_shape(shape, n_points);
  return model.predict(ShapeView::whole(shape), sample);
}

Shape label_parts(const Shape& shape, const PointSample& sample,
                  const std::vector<WeightField>& fields, double threshold) {
  Shape out = shape;
  std::vector<std::map<Label, double>> sums(shape.parts.size());
  std::vector<std::size_t> counts(shape.parts.size(), 0);
  for (std::size_t k = 0; k < sample.size(); ++k) ++counts[sample.part[k]];
  for (const WeightField& f : fields) {
    if (f.patch_label == kBackgroundPatch) continue;
    if (f.weights.size() != sample.size())
      throw Error(ErrorCode::InvalidArgument,
                  "weight field does not cover the sample", f.patch_label);
    for (std::size_t k = 0; k < sample.size(); ++k)
      sums[sample.part[k]][f.patch_label] += f.weights[k];
  }
  for (std::size_t i = 0; i < shape.parts.size(); ++i) {
    std::optional<Label> best;
    double best_mean = -1.0;
    // std::map iterates labels in order, so strict '>' keeps the smaller one.
    for (const auto& [label, sum] : sums[i]) {
      const double mean = counts[i] ? sum / static_cast<double>(counts[i]) : 0.0;
      if (mean > best_mean) {
        best_mean = mean;
        best = label;
      }
    }
    if (!best || best_mean < threshold) best.reset();
    out.parts[i] = out.parts[i].with_label(best);
  }
  return out;
}

ModelSet applicable_models(const Shape& shape, const ModelSet& all) {
  ModelSet out;
  for (const auto& m : all)
    if (shape.categories.count(m->category())) out.push_back(m);
  return out;
}

}  // namespace fame
