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

#include "fame/relation_graph.hpp"

#include <algorithm>
#include <deque>

#include "fame/error.hpp"

namespace fame {

RelationGraph::RelationGraph(const Shape& shape) {
  nodes_.reserve(shape.parts.size());
  for (const Part& p : shape.parts) nodes_.push_back(p.id());
  adjacency_.resize(nodes_.size());
  for (const ContactPoint& c : shape.contacts) {
    const std::size_t a = index_of(c.part_a);
    const std::size_t b = index_of(c.part_b);
    if (a == b) continue;
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
}

std::size_t RelationGraph::index_of(const PartId& id) const {
  auto it = std::find(nodes_.begin(), nodes_.end(), id);
  if (it == nodes_.end())
    throw Error(ErrorCode::UnknownPartId, "part not in relation graph", id);
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::set<std::pair<PartId, PartId>> RelationGraph::edges() const {
  std::set<std::pair<PartId, PartId>> out;
  for (std::size_t a = 0; a < adjacency_.size(); ++a) {
    for (std::size_t b : adjacency_[a]) {
      const PartId& x = nodes_[a];
      const PartId& y = nodes_[b];
      out.insert(x < y ? std::pair{x, y} : std::pair{y, x});
    }
  }
  return out;
}

bool RelationGraph::adjacent(const PartId& a, const PartId& b) const {
  const auto& adj = adjacency_[index_of(a)];
  return std::binary_search(adj.begin(), adj.end(), index_of(b));
}

std::vector<PartId> RelationGraph::neighbors(const PartId& id) const {
  std::vector<PartId> out;
  for (std::size_t j : adjacency_[index_of(id)]) out.push_back(nodes_[j]);
  return out;
}

bool RelationGraph::is_connected(const std::set<PartId>& subset) const {
  std::vector<std::size_t> idx;
  idx.reserve(subset.size());
  for (const PartId& id : subset) idx.push_back(index_of(id));
  std::sort(idx.begin(), idx.end());
  return is_connected_indices(idx);
}

bool RelationGraph::is_connected_indices(
    const std::vector<std::size_t>& subset) const {
  if (subset.empty()) return false;
  std::vector<char> in_subset(nodes_.size(), 0), seen(nodes_.size(), 0);
  for (std::size_t i : subset) in_subset.at(i) = 1;
  std::deque<std::size_t> queue{subset.front()};
  seen[subset.front()] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v : adjacency_[u]) {
      if (in_subset[v] && !seen[v]) {
        seen[v] = 1;
        ++reached;
        queue.push_back(v);
      }
    }
  }
  return reached == subset.size();
}

}  // namespace fame
