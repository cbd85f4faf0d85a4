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

#include "fame/part_groups.hpp"

#include <gtest/gtest.h>

#include <map>

#include "fixtures.hpp"

namespace {

using namespace fame;
using fixtures::box;
using IdSet = std::set<PartId>;

std::set<IdSet> part_sets(const std::vector<PartGroup>& groups) {
  std::set<IdSet> out;
  for (const PartGroup& g : groups) out.insert(g.part_ids);
  return out;
}

// Seat with a back and two legs hanging off it; no symmetry.
Shape seat_with_frontier() {
  Shape s;
  s.id = "s";
  s.parts = {box("seat", {0, 0, 0.4}, {1, 1, 0.45}, "sitting"),
             box("back", {0, 1, 0.4}, {1, 1.05, 1}, "leaning"),
             box("leg1", {0, 0, 0}, {0.05, 0.05, 0.4}),
             box("leg2", {0.95, 0, 0}, {1, 0.05, 0.4})};
  s.contacts = {{"seat", "back", ContactKind::Single, {Vec3(0, 1, 0.4)}},
                {"seat", "leg1", ContactKind::Single, {Vec3(0, 0, 0.4)}},
                {"seat", "leg2", ContactKind::Single, {Vec3(1, 0, 0.4)}}};
  return s;
}

// Components of the same-label subgraph, by repeated relaxation.
std::set<IdSet> label_components_oracle(const Shape& s) {
  const RelationGraph g(s);
  std::map<PartId, PartId> root;
  for (const Part& p : s.parts)
    if (p.label()) root[p.id()] = p.id();
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [id, r] : root)
      for (const PartId& n : g.neighbors(id))
        if (root.count(n) && s.parts[s.part_index(n)].label() == s.parts[s.part_index(id)].label() &&
            root[n] < r) {
          r = root[n];
          changed = true;
        }
  }
  std::map<PartId, IdSet> comps;
  for (const auto& [id, r] : root) comps[r].insert(id);
  std::set<IdSet> out;
  for (auto& [r, c] : comps) out.insert(c);
  return out;
}

}  // namespace

TEST(PartGroups, SymmetricLegsFormSetAndSingletons) {
  Shape s = fixtures::find(fixtures::corpus(), "chair_a");
  for (Part& p : s.parts)
    if (p.id().rfind("leg", 0) == 0) p = p.with_label("support");
  const auto bases = form_base_groups(s);
  int sets = 0, singletons = 0;
  for (const PartGroup& g : bases) {
    if (g.origin == GroupOrigin::SymmetrySet) {
      ++sets;
      EXPECT_EQ(g.part_ids, (IdSet{"leg1", "leg2", "leg3", "leg4"}));
    }
    if (g.origin == GroupOrigin::SymmetrySingleton) {
      ++singletons;
      EXPECT_EQ(g.part_ids.size(), 1u);
    }
  }
  EXPECT_EQ(sets, 1);
  EXPECT_EQ(singletons, 4);
  // Disconnected groups are allowed.
  EXPECT_FALSE(RelationGraph(s).is_connected({"leg1", "leg2", "leg3", "leg4"}));
}

TEST(PartGroups, UnlabeledShapeOnlyHasSymmetryGroups) {
  Shape s = fixtures::find(fixtures::corpus(), "table_a");
  for (Part& p : s.parts) p = p.with_label(std::nullopt);
  for (const PartGroup& g : form_base_groups(s))
    EXPECT_TRUE(g.origin == GroupOrigin::SymmetrySet ||
                g.origin == GroupOrigin::SymmetrySingleton);
  s.symmetry_groups.clear();
  EXPECT_TRUE(form_base_groups(s).empty());
}

TEST(PartGroups, BaseGroupsMatchLabelComponents) {
  for (const Shape& s : fixtures::corpus()) {
    std::set<IdSet> base;
    for (const PartGroup& g : form_base_groups(s))
      if (g.origin == GroupOrigin::Base) base.insert(g.part_ids);
    // Components that coincide with a symmetry group are reported under the
    // symmetry origin.
    std::set<IdSet> expected;
    for (const IdSet& c : label_components_oracle(s)) {
      bool symmetric = false;
      for (const auto& sym : s.symmetry_groups) {
        if (c == IdSet(sym.begin(), sym.end())) symmetric = true;
        if (c.size() == 1 && std::count(sym.begin(), sym.end(), *c.begin())) symmetric = true;
      }
      if (!symmetric) expected.insert(c);
    }
    EXPECT_EQ(base, expected) << s.id;
  }
}

TEST(PartGroups, FrontierExpansionRule) {
  const auto groups = part_sets(enumerate_part_groups(seat_with_frontier()));
  for (const IdSet& want : {IdSet{"seat"}, IdSet{"seat", "back"}, IdSet{"seat", "leg1"},
                            IdSet{"seat", "leg2"}, IdSet{"seat", "leg1", "leg2"}})
    EXPECT_TRUE(groups.count(want));
  EXPECT_FALSE(groups.count(IdSet{"seat", "back", "leg1"}));
}

TEST(PartGroups, EmptyFrontierKeepsBaseOnly) {
  Shape s;
  s.id = "s";
  s.parts = {box("seat", {0, 0, 0}, {1, 1, 1}, "sitting")};
  const auto groups = enumerate_part_groups(s);
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0].part_ids, IdSet{"seat"});
}

TEST(PartGroups, MatchesExhaustiveFrontierOracle) {
  const Shape s = fixtures::find(fixtures::corpus(), "chair_e");
  ASSERT_EQ(s.parts.size(), 7u);
  const RelationGraph graph(s);
  const auto bases = form_base_groups(s, graph);
  std::set<IdSet> expected = part_sets(bases);
  const std::size_t n = s.parts.size();
  for (const PartGroup& base : bases) {
    const auto frontier = group_frontier(base, graph);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      IdSet added;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) added.insert(s.parts[i].id());
      bool ok = added.size() <= 4;
      std::set<std::optional<Label>> added_labels;
      for (const PartId& id : added) {
        ok &= std::count(frontier.begin(), frontier.end(), id) > 0;
        added_labels.insert(s.parts[s.part_index(id)].label());
      }
      if (!ok || added_labels.size() != 1) continue;
      IdSet all = base.part_ids;
      all.insert(added.begin(), added.end());
      std::set<Label> labels;
      for (const PartId& id : all)
        if (auto l = s.parts[s.part_index(id)].label()) labels.insert(*l);
      if (labels.size() <= 2) expected.insert(all);
    }
  }
  EXPECT_EQ(part_sets(enumerate_part_groups(s)), expected);
}

TEST(PartGroups, Invariants) {
  for (const Shape& s : fixtures::corpus()) {
    const auto bases = part_sets(form_base_groups(s));
    const auto groups = enumerate_part_groups(s);
    EXPECT_EQ(part_sets(groups).size(), groups.size()) << s.id;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      const PartGroup& g = groups[i];
      EXPECT_LE(g.labels.size(), 2u);
      EXPECT_FALSE(g.is_null());
      if (i > 0) {
        const PartGroup& prev = groups[i - 1];
        EXPECT_TRUE(prev.part_ids.size() < g.part_ids.size() ||
                    (prev.part_ids.size() == g.part_ids.size() && prev.part_ids < g.part_ids));
      }
      if (g.origin == GroupOrigin::Expanded) {
        bool contains_base = false;
        for (const IdSet& b : bases)
          contains_base |= std::includes(g.part_ids.begin(), g.part_ids.end(), b.begin(), b.end());
        EXPECT_TRUE(contains_base);
      }
    }
  }
}

TEST(PartGroups, CapKeepsBaseGroups) {
  // A hub with many labeled spokes explodes combinatorially.
  Shape s;
  s.id = "hub";
  s.parts.push_back(box("hub", {0, 0, 0}, {1, 1, 1}, "placement"));
  for (int i = 0; i < 8; ++i) {
    const std::string id = "spoke" + std::to_string(i);
    s.parts.push_back(box(id, {1, 0, 0}, {2, 1, 1}, i % 2 ? "rolling" : "grasping"));
    s.contacts.push_back({"hub", id, ContactKind::Single, {Vec3(1, 0.5, 0.5)}});
  }
  GroupOptions opts;
  opts.max_groups = 12;
  const auto groups = enumerate_part_groups(s, opts);
  EXPECT_LE(groups.size(), 12u);
  const auto all = part_sets(groups);
  for (const IdSet& b : part_sets(form_base_groups(s))) EXPECT_TRUE(all.count(b));
  EXPECT_GT(enumerate_part_groups(s).size(), 12u);
  EXPECT_LE(enumerate_part_groups(s).size(), 64u);
}
