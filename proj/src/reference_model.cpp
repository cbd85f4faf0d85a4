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

#include "fame/reference_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "fame/error.hpp"

namespace fame {

namespace fs = std::filesystem;
using nlohmann::json;

double Band::membership(double x) const {
  if (x >= lo && x <= hi) return 1.0;
  const double dist = x < lo ? lo - x : x - hi;
  if (margin <= 0.0) return 0.0;
  return std::max(0.0, 1.0 - dist / margin);
}

ReferenceModel::ReferenceModel(std::string category,
                               std::vector<ProtoPatchSpec> patches,
                               std::map<Label, ClearanceSpec> spaces,
                               double background_affinity,
                               double background_penalty, double height_sigma,
                               double min_height_ratio)
    : category_(std::move(category)),
      patches_(std::move(patches)),
      spaces_(std::move(spaces)),
      background_affinity_(background_affinity),
      background_penalty_(background_penalty),
      height_sigma_(height_sigma),
      min_height_ratio_(min_height_ratio) {
  if (patches_.empty())
    throw Error(ErrorCode::InvalidArgument, "model without proto-patches", category_);
  if (background_affinity_ <= 0.0)
    throw Error(ErrorCode::InvalidArgument, "background affinity must be positive",
                category_);
}

namespace {

Band band_from(const json& j, Band fallback) {
  if (!j.is_array() || j.size() < 2) return fallback;
  Band b = fallback;
  b.lo = j[0].get<double>();
  b.hi = j[1].get<double>();
  if (j.size() > 2) b.margin = j[2].get<double>();
  return b;
}

ClearanceSpec clearance_from(const json& j) {
  ClearanceSpec c;
  const std::string dir = j.value("direction", std::string("+z"));
  if (dir.size() != 2 || (dir[0] != '+' && dir[0] != '-') || dir[1] < 'x' ||
      dir[1] > 'z')
    throw Error(ErrorCode::MalformedFile, "bad clearance direction", dir);
  c.positive = dir[0] == '+';
  c.axis = dir[1] - 'x';
  c.extent = j.value("extent", c.extent);
  c.inset = j.value("inset", c.inset);
  return c;
}

}  // namespace

ReferenceModel ReferenceModel::from_json(const json& j) {
  std::vector<ProtoPatchSpec> patches;
  for (const json& p : j.at("proto_patches")) {
    ProtoPatchSpec s;
    s.label = p.at("label").get<std::string>();
    if (p.contains("height")) s.height = band_from(p["height"], s.height);
    if (p.contains("normal_z")) s.normal_z = band_from(p["normal_z"], s.normal_z);
    if (p.contains("area")) s.area = band_from(p["area"], s.area);
    s.required = p.value("required", true);
    s.weight = p.value("weight", 1.0);
    s.min_coverage = p.value("min_coverage", s.min_coverage);
    s.typical_height = p.value("typical_height", 0.5 * (s.height.lo + s.height.hi));
    patches.push_back(std::move(s));
  }
  std::map<Label, ClearanceSpec> spaces;
  if (j.contains("functional_space"))
    for (const auto& [label, spec] : j["functional_space"].items())
      spaces[label] = clearance_from(spec);
  ReferenceModel m(j.at("category").get<std::string>(), std::move(patches),
                   std::move(spaces), j.value("background_affinity", 0.25),
                   j.value("background_penalty", 0.2), j.value("height_sigma", 0.25),
                   j.value("min_height_ratio", 0.25));
  if (j.contains("scores")) {
    m.set_distributions(ScoreDistributions(
        j["scores"].at("inside").get<std::vector<double>>(),
        j["scores"].at("outside").get<std::vector<double>>()));
  }
  return m;
}

std::vector<Label> ReferenceModel::proto_patch_labels() const {
  std::vector<Label> out;
  for (const auto& p : patches_) out.push_back(p.label);
  return out;
}

namespace {

struct ViewGeometry {
  std::vector<std::size_t> points;
  double z_min = 0.0;
  double height = 0.0;
  double total_area = 0.0;
  std::vector<double> part_area_fraction;  // indexed by shape part
};

ViewGeometry view_geometry(const ShapeView& view, const PointSample& sample,
                           double min_height_ratio) {
  ViewGeometry g;
  g.points = view_points(view, sample);
  const Aabb box = view.bbox();
  g.z_min = box.min.z();
  const Vec3 e = box.extents();
  g.height = std::max(e.z(), min_height_ratio * std::max(e.x(), e.y()));
  g.part_area_fraction.assign(view.shape->parts.size(), 0.0);
  for (std::size_t i : view.parts) {
    const double a = view.shape->parts[i].area();
    g.part_area_fraction[i] = a;
    g.total_area += a;
  }
  if (g.total_area > 0.0)
    for (double& f : g.part_area_fraction) f /= g.total_area;
  return g;
}

double relative_height(const ViewGeometry& g, double z) {
  return g.height > 0.0 ? (z - g.z_min) / g.height : 0.0;
}

}  // namespace

std::vector<WeightField> ReferenceModel::predict(const ShapeView& view,
                                                 const PointSample& sample) const {
  const ViewGeometry g = view_geometry(view, sample, min_height_ratio_);
  std::vector<WeightField> fields(patches_.size() + 1);
  for (std::size_t k = 0; k < patches_.size(); ++k) {
    fields[k].patch_label = patches_[k].label;
    fields[k].weights.resize(g.points.size());
  }
  fields.back().patch_label = kBackgroundPatch;
  fields.back().weights.resize(g.points.size());

  std::vector<double> affinity(patches_.size());
  for (std::size_t n = 0; n < g.points.size(); ++n) {
    const std::size_t k = g.points[n];
    const double h = relative_height(g, sample.positions[k].z());
    const double nz = std::abs(sample.normals[k].z());
    const double af = g.part_area_fraction[sample.part[k]];
    double total = background_affinity_;
    for (std::size_t p = 0; p < patches_.size(); ++p) {
      const ProtoPatchSpec& s = patches_[p];
      affinity[p] = s.height.membership(h) * s.normal_z.membership(nz) *
                    s.area.membership(af);
      total += affinity[p];
    }
    for (std::size_t p = 0; p < patches_.size(); ++p)
      fields[p].weights[n] = affinity[p] / total;
    fields.back().weights[n] = background_affinity_ / total;
  }
  return fields;
}

double ReferenceModel::raw_score(const ShapeView& view, const PointSample& sample) const {
  if (view.empty()) return 0.0;
  const std::vector<WeightField> fields = predict(view, sample);
  const ViewGeometry g = view_geometry(view, sample, min_height_ratio_);
  double sampled_area = 0.0;
  for (std::size_t k : g.points) sampled_area += sample.area[k];
  if (sampled_area <= 0.0) return 0.0;

  double numerator = 0.0, denominator = 0.0;
  for (std::size_t p = 0; p < patches_.size(); ++p) {
    const ProtoPatchSpec& s = patches_[p];
    if (!s.required) continue;
    denominator += s.weight;
    double mass = 0.0, height = 0.0;
    for (std::size_t n = 0; n < g.points.size(); ++n) {
      const std::size_t k = g.points[n];
      const double m = fields[p].weights[n] * sample.area[k];
      mass += m;
      height += m * relative_height(g, sample.positions[k].z());
    }
    if (mass <= 0.0) continue;
    const double coverage = std::min(1.0, mass / (s.min_coverage * sampled_area));
    const double dh = (height / mass - s.typical_height) / height_sigma_;
    numerator += s.weight * coverage * std::exp(-dh * dh);
  }
  if (denominator <= 0.0 || numerator <= 0.0) return 0.0;

  double background = 0.0;
  for (std::size_t n = 0; n < g.points.size(); ++n)
    background += fields.back().weights[n] * sample.area[g.points[n]];
  background /= sampled_area;
  return numerator / denominator * (1.0 - background_penalty_ * background);
}

bool ReferenceModel::has_functional_space(const Label& label) const {
  return spaces_.count(label) > 0;
}

std::vector<std::pair<std::size_t, Aabb>> ReferenceModel::functional_space(
    const Label& label, const ShapeView& view) const {
  const auto it = spaces_.find(label);
  if (it == spaces_.end())
    throw Error(ErrorCode::UnknownLabel, "label has no functional space entry",
                category_ + ":" + label);
  const ClearanceSpec& c = it->second;
  const double gap = 1e-3 * view.bbox().diagonal();
  std::vector<std::pair<std::size_t, Aabb>> out;
  for (std::size_t i : view.parts) {
    const Part& part = view.shape->parts[i];
    if (part.label() != label) continue;
    const Aabb& b = part.bbox();
    const Vec3 e = b.extents();
    double width = 0.0;
    Aabb box;
    for (int k = 0; k < 3; ++k) {
      if (k == c.axis) continue;
      width = std::max(width, e[k]);
      box.min[k] = b.min[k] + c.inset * e[k];
      box.max[k] = b.max[k] - c.inset * e[k];
    }
    const double depth = c.extent * width;
    if (c.positive) {
      box.min[c.axis] = b.max[c.axis] + gap;
      box.max[c.axis] = b.max[c.axis] + gap + depth;
    } else {
      box.max[c.axis] = b.min[c.axis] - gap;
      box.min[c.axis] = b.min[c.axis] - gap - depth;
    }
    out.emplace_back(i, box);
  }
  return out;
}

void ReferenceModel::calibrate(const std::vector<Shape>& inside,
                               const std::vector<Shape>& outside) {
  auto score_all = [this](const std::vector<Shape>& shapes) {
    std::vector<double> out;
    for (const Shape& s : shapes) {
      const PointSample sample = sample_shape(s, kDefaultSampleCount);
      out.push_back(raw_score(ShapeView::whole(s), sample));
    }
    return out;
  };
  set_distributions(ScoreDistributions(score_all(inside), score_all(outside)));
}

ModelSet load_models(const fs::path& dir, const LoadOptions& opts) {
  if (!fs::is_directory(dir))
    throw Error(ErrorCode::DatasetInvalid, "model directory not found", dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  std::map<fs::path, std::vector<Shape>> datasets;
  ModelSet out;
  for (const fs::path& f : files) {
    std::ifstream in(f);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::MalformedFile, "model config is not valid JSON",
                  f.filename().string() + ": " + e.what());
    }
    auto model = std::make_shared<ReferenceModel>(ReferenceModel::from_json(j));
    if (j.contains("training") && !j.contains("scores")) {
      const json& t = j["training"];
      const fs::path data_dir =
          fs::weakly_canonical(f.parent_path() / t.at("dataset").get<std::string>());
      if (!datasets.count(data_dir)) datasets[data_dir] = load_population(data_dir, opts);
      const auto& shapes = datasets[data_dir];
      // Without explicit lists, inside = shapes of this category, outside =
      // everything else.
      auto pick = [&](const char* key) {
        std::vector<Shape> chosen;
        if (!t.contains(key)) {
          const bool want_inside = std::string(key) == "inside";
          for (const Shape& s : shapes)
            if ((s.categories.count(model->category()) > 0) == want_inside)
              chosen.push_back(s);
          return chosen;
        }
        for (const auto& id : t.at(key)) {
          const std::string want = id.get<std::string>();
          auto it = std::find_if(shapes.begin(), shapes.end(),
                                 [&](const Shape& s) { return s.id == want; });
          if (it == shapes.end())
            throw Error(ErrorCode::DatasetInvalid, "training shape not found",
                        f.filename().string() + ": training." + key + " -> " + want);
          chosen.push_back(*it);
        }
        return chosen;
      };
      model->calibrate(pick("inside"), pick("outside"));
    }
    out.push_back(std::move(model));
  }
  return out;
}

}  // namespace fame
