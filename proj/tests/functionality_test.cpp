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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fame/error.hpp"
#include "fame/reference_model.hpp"
#include "fame/validity.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace {

using namespace fame;
using fixtures::box;

const CategoryModel& model(const std::string& category) {
  for (const auto& m : fixtures::models())
    if (m->category() == category) return *m;
  throw std::runtime_error("no model " + category);
}

}  // namespace

TEST(ScoreDistributions, WorkedExample) {
  const ScoreDistributions d({1, 2, 3, 4}, {0, 1});
  EXPECT_NEAR(d.w1(), 4.0 / 6.0, 1e-15);
  EXPECT_NEAR(d.w1() + d.w2(), 1.0, 1e-15);
  EXPECT_NEAR(d.normalize(2.5), 0.5 * 4.0 / 6.0 + 1.0 * 2.0 / 6.0, 1e-12);
  EXPECT_EQ(d.normalize(100), 1.0);
  EXPECT_EQ(d.normalize(-1), 0.0);
  EXPECT_NEAR(d.cdf_inside(2.0), 0.5, 1e-15);  // ties inclusive
}

TEST(ScoreDistributions, MonotoneInRaw) {
  std::mt19937 rng(5);
  std::normal_distribution<double> n(0, 1);
  std::vector<double> in(50), out(30);
  for (double& x : in) x = n(rng) + 1;
  for (double& x : out) x = n(rng);
  const ScoreDistributions d(in, out);
  double prev = -1;
  for (int i = 0; i < 1000; ++i) {
    const double v = d.normalize(-4 + 8.0 * i / 999);
    EXPECT_GE(v, prev);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
    prev = v;
  }
}

TEST(ScoreDistributions, RejectsEmptyOrNonFinite) {
  EXPECT_THROW(ScoreDistributions({}, {1}), Error);
  EXPECT_THROW(ScoreDistributions({1}, {}), Error);
  EXPECT_THROW(ScoreDistributions({1, NAN}, {1}), Error);
}

TEST(Band, Membership) {
  const Band b{0.2, 0.4, 0.1};
  EXPECT_EQ(b.membership(0.3), 1.0);
  EXPECT_NEAR(b.membership(0.45), 0.5, 1e-12);
  EXPECT_NEAR(b.membership(0.15), 0.5, 1e-12);
  EXPECT_EQ(b.membership(0.6), 0.0);
}

TEST(Prediction, WeightsSumToOne) {
  const Shape chair = fixtures::find(fixtures::corpus(), "chair_a");
  for (const auto& m : fixtures::models()) {
    const auto fields = predict_proto_patches(*m, chair, 512);
    ASSERT_EQ(fields.size(), m->proto_patch_labels().size() + 1);
    EXPECT_EQ(fields.back().patch_label, kBackgroundPatch);
    for (std::size_t k = 0; k < 512; ++k) {
      double sum = 0;
      for (const auto& f : fields) {
        EXPECT_GE(f.weights[k], 0.0);
        sum += f.weights[k];
      }
      EXPECT_NEAR(sum, 1.0, 1e-9);
    }
  }
}

TEST(Prediction, ChairPartsGetTheirLabels) {
  Shape chair = fixtures::find(fixtures::corpus(), "chair_a");
  for (Part& p : chair.parts) p = p.with_label(std::nullopt);
  const PointSample sample = sample_shape(chair, kDefaultSampleCount);
  const Shape labeled =
      label_parts(chair, sample, model("chair").predict(ShapeView::whole(chair), sample));
  EXPECT_EQ(labeled.parts[labeled.part_index("seat")].label(), "sitting");
  EXPECT_EQ(labeled.parts[labeled.part_index("back")].label(), "leaning");
  EXPECT_FALSE(labeled.parts[labeled.part_index("leg1")].label().has_value());
}

TEST(LabelParts, ThresholdAndTies) {
  Shape s = fixtures::assemble("s", "x",
                               {box("a", {0, 0, 0}, {1, 1, 0.1}), box("b", {0, 0, 0.1}, {1, 1, 0.2}),
                                box("c", {0, 0, 0.2}, {1, 1, 0.3})});
  const PointSample sample = sample_shape(s, 300);
  WeightField p{"p", {}}, q{"q", {}}, bg{kBackgroundPatch, {}};
  for (std::size_t k = 0; k < sample.size(); ++k) {
    const std::size_t part = sample.part[k];
    const double wp = part == 0 ? 0.6 : part == 1 ? 0.4 : 0.5;
    const double wq = part == 2 ? 0.5 : 0.0;
    p.weights.push_back(wp);
    q.weights.push_back(wq);
    bg.weights.push_back(1 - wp - wq);
  }
  const Shape out = label_parts(s, sample, {q, p, bg});
  EXPECT_EQ(out.parts[0].label(), "p");
  EXPECT_FALSE(out.parts[1].label().has_value());
  EXPECT_EQ(out.parts[2].label(), "p");  // tie at 0.5 goes to the smaller label
}

TEST(ReferenceModel, RemovingTheSeatLowersTheScore) {
  const Shape chair = fixtures::find(fixtures::corpus(), "chair_a");
  const PointSample sample = sample_shape(chair, kDefaultSampleCount);
  const CategoryModel& m = model("chair");
  const double whole = m.raw_score(ShapeView::whole(chair), sample);
  const double seatless =
      m.raw_score(ShapeView::of(chair, {"back", "leg1", "leg2", "leg3", "leg4"}), sample);
  EXPECT_GT(whole, seatless);
  EXPECT_GT(m.distributions().normalize(whole), 0.9);
  EXPECT_LT(model("shelf").distributions().normalize(
                model("shelf").raw_score(ShapeView::whole(chair), sample)),
            m.distributions().normalize(whole));
}

TEST(ReferenceModel, FromJson) {
  const nlohmann::json j = {
      {"category", "thing"},
      {"proto_patches", {{{"label", "top"}, {"height", {0.9, 1.0, 0.05}}}}},
      {"functional_space", {{"top", {{"direction", "-x"}, {"extent", 0.5}}}}},
      {"scores", {{"inside", {1, 2}}, {"outside", {0}}}}};
  const ReferenceModel m = ReferenceModel::from_json(j);
  EXPECT_EQ(m.category(), "thing");
  EXPECT_EQ(m.proto_patch_labels(), (std::vector<Label>{"top"}));
  EXPECT_TRUE(m.has_functional_space("top"));
  EXPECT_NEAR(m.patches()[0].height.lo, 0.9, 1e-15);
  EXPECT_NEAR(m.patches()[0].typical_height, 0.95, 1e-15);
  EXPECT_NEAR(m.distributions().w1(), 2.0 / 3.0, 1e-15);

  nlohmann::json bad = j;
  bad["functional_space"]["top"]["direction"] = "up";
  EXPECT_THROW(ReferenceModel::from_json(bad), Error);
}

TEST(Stability, MatchesAngularGapOracle) {
  const auto corpus = fixtures::corpus();
  std::mt19937 rng(11);
  int checked = 0, stable = 0;
  for (const Shape& s : corpus) {
    const PointSample sample = sample_shape(s, kDefaultSampleCount);
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<PartId> ids;
      for (const Part& p : s.parts)
        if (rng() % 2) ids.push_back(p.id());
      if (ids.empty()) continue;
      const ShapeView view = ShapeView::of(s, ids);
      const bool got = check_stability(view, sample);
      EXPECT_EQ(got, oracles::stability(view, sample)) << s.id;
      ++checked;
      stable += got;
    }
  }
  EXPECT_GT(checked, 150);
  EXPECT_GT(stable, 0);
  EXPECT_LT(stable, checked);
}

TEST(Stability, Examples) {
  const Shape chair = fixtures::find(fixtures::corpus(), "chair_a");
  const PointSample cs = sample_shape(chair, kDefaultSampleCount);
  EXPECT_TRUE(check_stability(ShapeView::whole(chair), cs));
  EXPECT_FALSE(check_stability(ShapeView::of(chair, {"seat", "leg1"}), cs));

  const Shape cantilever = fixtures::assemble(
      "c", "x", {box("post", {0, 0, 0}, {0.1, 0.1, 1}), box("arm", {0, 0, 1}, {2, 0.1, 1.1})});
  const PointSample ks = sample_shape(cantilever, kDefaultSampleCount);
  EXPECT_FALSE(check_stability(ShapeView::whole(cantilever), ks));
  EXPECT_TRUE(check_stability(ShapeView::of(cantilever, {"post"}), ks));
}

TEST(ConvexHull, SquareWithInteriorAndCollinear) {
  const auto hull = convex_hull({{0, 0}, {1, 0}, {0.5, 0}, {1, 1}, {0, 1}, {0.5, 0.5}});
  EXPECT_EQ(hull.size(), 4u);
  EXPECT_TRUE(point_in_convex_polygon({1, 0.5}, hull, 1e-12));
  EXPECT_FALSE(point_in_convex_polygon({1.01, 0.5}, hull, 1e-12));
}

TEST(FunctionalSpace, SeatClearance) {
  const Shape chair = fixtures::find(fixtures::corpus(), "chair_a");
  const CategoryModel& m = model("chair");
  EXPECT_TRUE(check_functional_space(ShapeView::whole(chair), "sitting", m));

  const Aabb seat = chair.parts[chair.part_index("seat")].bbox();
  const double gap = 0.1 * seat.extents().x();
  std::vector<Part> parts = chair.parts;
  parts.push_back(box("lid", {seat.min.x(), seat.min.y(), seat.max.z() + gap},
                      {seat.max.x(), seat.max.y() - 0.05, seat.max.z() + gap + 0.02}));
  const Shape covered = fixtures::assemble("covered", "chair", parts);
  EXPECT_FALSE(check_functional_space(ShapeView::whole(covered), "sitting", m));
  // The lid itself is outside the view but still blocks the seat.
  std::vector<PartId> without_lid;
  for (const Part& p : chair.parts) without_lid.push_back(p.id());
  EXPECT_FALSE(check_functional_space(ShapeView::of(covered, without_lid), "sitting", m));

  EXPECT_TRUE(check_functional_space(ShapeView::of(chair, {"leg1"}), "sitting", m));
  try {
    check_functional_space(ShapeView::whole(chair), "rolling", m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownLabel);
  }
}
