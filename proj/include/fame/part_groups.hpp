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

#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "fame/relation_graph.hpp"
#include "fame/shape.hpp"

namespace fame {

/// The crossover unit: a subset of one shape's parts. The null group (no
/// parts) stands for insertion-style crossover.
struct PartGroup {
  std::string shape_id;
  std::set<PartId> part_ids;
  std::set<Label> labels;
  GroupOrigin origin = GroupOrigin::Base;

  bool is_null() const { return part_ids.empty(); }
  bool has_any_label(const std::set<Label>& wanted) const;

  static PartGroup null_group(std::string shape_id);
  static PartGroup make(const Shape& shape, std::set<PartId> parts,
                        GroupOrigin origin);
};

struct GroupOptions {
  std::size_t max_groups = 64;
  /// Largest frontier subset added to a base group.
  std::size_t max_expansion = 4;
  /// Frontier parts kept (closest to the base centroid first).
  std::size_t max_frontier = 8;
};

/// Same-label connected components, symmetry sets that share a label (or are
/// all unlabeled), and every symmetry member on its own.
std::vector<PartGroup> form_base_groups(const Shape& shape,
                                        const RelationGraph& graph);
std::vector<PartGroup> form_base_groups(const Shape& shape);

/// Base groups plus one-ring frontier expansions; de-duplicated and sorted by
/// (size, part ids). Base groups always survive the max_groups cut.
std::vector<PartGroup> enumerate_part_groups(const Shape& shape,
                                             const GroupOptions& opts = {});

/// Parts adjacent to the group but outside it, in id order.
std::vector<PartId> group_frontier(const PartGroup& g, const RelationGraph& graph);

nlohmann::json to_json(const PartGroup& g);

}  // namespace fame
