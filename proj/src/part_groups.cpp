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

#include <algorithm>
#include <deque>
#include <map>

namespace fame {

bool PartGroup::has_any_label(const std::set<Label>& wanted) const {
  return std::any_of(labels.begin(), labels.end(),
                     [&](const Label& l) { return wanted.count(l) > 0; });
}

PartGroup PartGroup::null_group(std::string shape_id) {
  PartGroup g;
  g.shape_id = std::move(shape_id);
  g.origin = GroupOrigin::Null;
  return g;
}

PartGroup PartGroup::make(const Shape& shape, std::set<PartId> parts,
                          GroupOrigin origin) {
  PartGroup g;
  g.shape_id = shape.id;
  for (const PartId& id : parts)
    if (const auto& l = shape.parts[shape.part_index(id)].label()) g.labels.insert(*l);
  g.part_ids = std::move(parts);
  g.origin = g.part_ids.empty() ? GroupOrigin::Null : origin;
  return g;
}

namespace {

bool group_less(const PartGroup& a, const PartGroup& b) {
  if (a.part_ids.size() != b.part_ids.size())
    return a.part_ids.size() < b.part_ids.size();
  return a.part_ids < b.part_ids;
}

// Symmetry origins win over plain base groups when part sets coincide.
int origin_rank(GroupOrigin o) {
  switch (o) {
    case GroupOrigin::SymmetrySet: return 0;
    case GroupOrigin::SymmetrySingleton: return 1;
    case GroupOrigin::Base: return 2;
    case GroupOrigin::Expanded: return 3;
    case GroupOrigin::Null: return 4;
  }
  return 5;
}

void add_unique(std::vector<PartGroup>& out, PartGroup g) {
  for (PartGroup& existing : out) {
    if (existing.part_ids == g.part_ids) {
      if (origin_rank(g.origin) < origin_rank(existing.origin))
        existing.origin = g.origin;
      return;
    }
  }
  out.push_back(std::move(g));
}

}  // namespace

std::vector<PartGroup> form_base_groups(const Shape& shape,
                                        const RelationGraph& graph) {
  std::vector<PartGroup> out;

  // Maximal connected same-label components.
  std::map<PartId, bool> visited;
  for (const Part& p : shape.parts) {
    if (!p.label() || visited[p.id()]) continue;
    std::set<PartId> component;
    std::deque<PartId> queue{p.id()};
    visited[p.id()] = true;
    while (!queue.empty()) {
      const PartId u = queue.front();
      queue.pop_front();
      component.insert(u);
      for (const PartId& v : graph.neighbors(u)) {
        const auto& lv = shape.parts[shape.part_index(v)].label();
        if (!visited[v] && lv && *lv == *p.label()) {
          visited[v] = true;
          queue.push_back(v);
        }
      }
    }
    add_unique(out, PartGroup::make(shape, std::move(component), GroupOrigin::Base));
  }

  for (const auto& sym : shape.symmetry_groups) {
    std::set<PartId> members(sym.begin(), sym.end());
    std::set<std::optional<Label>> member_labels;
    for (const PartId& id : members)
      member_labels.insert(shape.parts[shape.part_index(id)].label());
    if (member_labels.size() == 1)
      add_unique(out, PartGroup::make(shape, members, GroupOrigin::SymmetrySet));
    for (const PartId& id : members)
      add_unique(out, PartGroup::make(shape, {id}, GroupOrigin::SymmetrySingleton));
  }

  std::sort(out.begin(), out.end(), group_less);
  return out;
}

std::vector<PartGroup> form_base_groups(const Shape& shape) {
  return form_base_groups(shape, RelationGraph(shape));
}

std::vector<PartId> group_frontier(const PartGroup& g, const RelationGraph& graph) {
  std::set<PartId> frontier;
  for (const PartId& id : g.part_ids)
    for (const PartId& n : graph.neighbors(id))
      if (!g.part_ids.count(n)) frontier.insert(n);
  return {frontier.begin(), frontier.end()};
}

std::vector<PartGroup> enumerate_part_groups(const Shape& shape,
                                             const GroupOptions& opts) {
  const RelationGraph graph(shape);
  const std::vector<PartGroup> bases = form_base_groups(shape, graph);
  std::vector<PartGroup> expanded;

  for (const PartGroup& base : bases) {
    std::vector<PartId> frontier = group_frontier(base, graph);
    if (frontier.size() > opts.max_frontier) {
      const Vec3 c = bbox_of(base.part_ids, shape).center();
      std::stable_sort(frontier.begin(), frontier.end(),
                       [&](const PartId& a, const PartId& b) {
                         const double da =
                             (shape.parts[shape.part_index(a)].bbox().center() - c).norm();
                         const double db =
                             (shape.parts[shape.part_index(b)].bbox().center() - c).norm();
                         return da < db;
                       });
      frontier.resize(opts.max_frontier);
      std::sort(frontier.begin(), frontier.end());
    }
    const std::size_t n = frontier.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountll(mask)) > opts.max_expansion)
        continue;
      std::set<std::optional<Label>> added_labels;
      std::set<PartId> parts = base.part_ids;
      for (std::size_t k = 0; k < n; ++k) {
        if (mask & (std::size_t{1} << k)) {
          parts.insert(frontier[k]);
          added_labels.insert(shape.parts[shape.part_index(frontier[k])].label());
        }
      }
      // Added parts are all unlabeled or all share one label.
      if (added_labels.size() != 1) continue;
      PartGroup g = PartGroup::make(shape, std::move(parts), GroupOrigin::Expanded);
      if (g.labels.size() > 2) continue;
      expanded.push_back(std::move(g));
    }
  }

  std::vector<PartGroup> out;
  for (const PartGroup& b : bases) add_unique(out, b);
  std::sort(expanded.begin(), expanded.end(), group_less);
  for (PartGroup& g : expanded) {
    if (out.size() >= std::max(opts.max_groups, bases.size())) break;
    add_unique(out, std::move(g));
  }
  std::sort(out.begin(), out.end(), group_less);
  return out;
}

nlohmann::json to_json(const PartGroup& g) {
  return {{"shape", g.shape_id},
          {"parts", std::vector<PartId>(g.part_ids.begin(), g.part_ids.end())},
          {"labels", std::vector<Label>(g.labels.begin(), g.labels.end())},
          {"origin", to_string(g.origin)}};
}

}  // namespace fame
