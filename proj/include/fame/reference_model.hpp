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

#include <filesystem>
#include <map>
#include <optional>

#include "json.hpp"

#include "fame/category_model.hpp"
#include "fame/dataset.hpp"

namespace fame {

/// Soft interval: 1 inside [lo, hi], falling linearly to 0 over `margin`.
struct Band {
  double lo = 0.0;
  double hi = 1.0;
  double margin = 0.1;

  double membership(double x) const;
};

struct ProtoPatchSpec {
  Label label;
  Band height{0.0, 1.0, 0.1};    // relative to the scored view's height
  Band normal_z{0.0, 1.0, 0.15};  // on |n.z|: orientation, not facing
  Band area{0.0, 1.0, 0.1};      // point's part area / scored shape area
  bool required = true;
  double weight = 1.0;
  double min_coverage = 0.05;    // fraction of shape area the patch should reach
  double typical_height = 0.5;
};

struct ClearanceSpec {
  int axis = 2;          // 0 = x, 1 = y, 2 = z
  bool positive = true;  // extrude along +axis
  double extent = 0.8;   // times the patch width
  double inset = 0.1;    // footprint shrink per side, fraction of extent
};

/// Deterministic geometric stand-in for a learned category model: proto-patches
/// are predicates over sample points, the raw score rewards coverage of the
/// required patches at their typical heights, and functional spaces are
/// clearance boxes next to labeled parts.
class ReferenceModel final : public CategoryModel {
 public:
  ReferenceModel(std::string category, std::vector<ProtoPatchSpec> patches,
                 std::map<Label, ClearanceSpec> spaces,
                 double background_affinity = 0.25,
                 double background_penalty = 0.2, double height_sigma = 0.25,
                 double min_height_ratio = 0.25);

  static ReferenceModel from_json(const nlohmann::json& j);

  const std::string& category() const override { return category_; }
  std::vector<Label> proto_patch_labels() const override;
  std::vector<WeightField> predict(const ShapeView& view,
                                   const PointSample& sample) const override;
  double raw_score(const ShapeView& view, const PointSample& sample) const override;
  bool has_functional_space(const Label& label) const override;
  std::vector<std::pair<std::size_t, Aabb>> functional_space(
      const Label& label, const ShapeView& view) const override;
  const ScoreDistributions& distributions() const override { return dist_; }

  void set_distributions(ScoreDistributions d) { dist_ = std::move(d); }
  /// Raw scores of whole training shapes, split by category membership.
  void calibrate(const std::vector<Shape>& inside, const std::vector<Shape>& outside);

  const std::vector<ProtoPatchSpec>& patches() const { return patches_; }

 private:
  std::string category_;
  std::vector<ProtoPatchSpec> patches_;
  std::map<Label, ClearanceSpec> spaces_;
  double background_affinity_;
  double background_penalty_;
  double height_sigma_;
  double min_height_ratio_;  // height normalizer floor, of the widest extent
  ScoreDistributions dist_;
};

/// Loads every `*.json` model in `dir`. Models with a "training" block are
/// calibrated by scoring the listed shapes of the referenced dataset.
ModelSet load_models(const std::filesystem::path& dir, const LoadOptions& opts = {});

}  // namespace fame
