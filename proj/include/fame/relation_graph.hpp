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
#include <utility>
#include <vector>

#include "fame/shape.hpp"

namespace fame {

/// Undirected part adjacency induced by shared contact points.
class RelationGraph {
 public:
  RelationGraph() = default;
  explicit RelationGraph(const Shape& shape);

  const std::vector<PartId>& nodes() const { return nodes_; }
  /// Edges as (smaller id, larger id), sorted.
  std::set<std::pair<PartId, PartId>> edges() const;
  bool adjacent(const PartId& a, const PartId& b) const;
  std::vector<PartId> neighbors(const PartId& id) const;
  std::size_t index_of(const PartId& id) const;  // throws UnknownPartId

  /// Connectivity of the induced subgraph; empty -> false, singleton -> true.
  bool is_connected(const std::set<PartId>& subset) const;
  bool is_connected_indices(const std::vector<std::size_t>& subset) const;

 private:
  std::vector<PartId> nodes_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

inline RelationGraph build_relation_graph(const Shape& shape) {
  return RelationGraph(shape);
}

inline bool is_connected(const RelationGraph& graph,
                         const std::set<PartId>& subset) {
  return graph.is_connected(subset);
}

}  // namespace fame
