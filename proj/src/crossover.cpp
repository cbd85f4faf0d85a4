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

#include "fame/crossover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "fame/contacts.hpp"
#include "fame/error.hpp"
#include "fame/relation_graph.hpp"

namespace fame {

SimilarityTransform initial_alignment(const Aabb& src, const Aabb& dst) {
  if (src.empty() || dst.empty() || src.diagonal() <= 0.0 || dst.diagonal() <= 0.0)
    throw Error(ErrorCode::DegenerateBBox, "bounding box has zero diagonal");
  const Vec3 es = src.extents();
  const Vec3 ed = dst.extents();
  int axis = 0;
  for (int k = 1; k < 3; ++k)
    if (es[k] > es[axis]) axis = k;
  if (es[axis] <= 0.0 || ed[axis] <= 0.0)
    throw Error(ErrorCode::DegenerateBBox, "zero extent on the aligned axis",
                "axis " + std::to_string(axis));
  const double s = ed[axis] / es[axis];
  SimilarityTransform t;
  t.scale = Vec3::Constant(s);
  t.translation = dst.center() - s * src.center();
  return t;
}

ContactMatch match_contacts(std::span<const Vec3> source,
                            std::span<const Vec3> target) {
  if (source.empty() || target.empty())
    throw Error(ErrorCode::NoContacts, "contact matching needs points on both sides");
  ContactMatch m;
  m.n = std::min(source.size(), target.size());
  for (std::size_t i = 0; i < source.size(); ++i) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < target.size(); ++j) {
      const double d = (source[i] - target[j]).norm();
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    m.pairs.push_back({i, best, source[i], target[best], best_d});
  }
  std::stable_sort(m.pairs.begin(), m.pairs.end(),
                   [](const ContactMatch::Entry& a, const ContactMatch::Entry& b) {
                     if (a.distance != b.distance) return a.distance < b.distance;
                     if (a.source != b.source) return a.source < b.source;
                     return a.target < b.target;
                   });
  m.pairs.resize(m.n);
  return m;
}

SimilarityTransform refined_alignment(const ContactMatch& match, double diag,
                                      double degenerate_offset) {
  if (match.pairs.empty()) return {};
  Vec3 cs = Vec3::Zero(), ct = Vec3::Zero();
  for (const auto& e : match.pairs) {
    cs += e.source_point;
    ct += e.target_point;
  }
  cs /= static_cast<double>(match.pairs.size());
  ct /= static_cast<double>(match.pairs.size());

  const double cutoff = degenerate_offset * diag;
  Vec3 scale = Vec3::Ones();
  for (int k = 0; k < 3; ++k) {
    double num = 0.0, den = 0.0;
    for (const auto& e : match.pairs) {
      const double a = e.source_point[k] - cs[k];
      if (std::abs(a) < cutoff) continue;
      const double b = e.target_point[k] - ct[k];
      // a^2-weighted mean of the per-pair ratios b / a.
      num += a * b;
      den += a * a;
    }
    if (den > 0.0 && num > 0.0) scale[k] = num / den;
  }
  SimilarityTransform t;
  t.scale = scale;
  t.translation = ct - scale.cwiseProduct(cs);
  return t;
}

double sum_squared_error(const ContactMatch& match, const SimilarityTransform& t) {
  double sse = 0.0;
  for (const auto& e : match.pairs)
    sse += (t.apply(e.source_point) - e.target_point).squaredNorm();
  return sse;
}

double max_residual(const ContactMatch& match, const SimilarityTransform& t) {
  double worst = 0.0;
  for (const auto& e : match.pairs)
    worst = std::max(worst, (t.apply(e.source_point) - e.target_point).norm());
  return worst;
}

PlacementChoice accept_or_revert(double residual, double diag, double fraction) {
  return residual <= fraction * diag ? PlacementChoice::Refined
                                     : PlacementChoice::Initial;
}

RestoredPart restore_proportions(const Part& part, const Vec3& cumulative_scale,
                                 double factor) {
  if (!part.label()) return {part, cumulative_scale};
  Vec3 fix = Vec3::Ones();
  Vec3 scale = cumulative_scale;
  for (int k = 1; k < 3; ++k) {
    const double ratio = scale[k] / scale[0];
    if (ratio > factor || ratio * factor < 1.0) {
      fix[k] = scale[0] / scale[k];
      scale[k] = scale[0];
    }
  }
  if (fix == Vec3::Ones()) return {part, cumulative_scale};
  return {part.scaled_about(part.bbox().center(), fix), scale};
}

namespace {

struct FlatPoint {
  Vec3 point;
  PartId inside;   // part within the group
  PartId outside;  // part across the boundary
  std::size_t contact;
};

// Boundary contacts of a group, flattened to their points.
std::vector<FlatPoint> boundary_points(const Shape& s, const std::set<PartId>& group) {
  std::vector<FlatPoint> out;
  for (std::size_t ci = 0; ci < s.contacts.size(); ++ci) {
    const ContactPoint& c = s.contacts[ci];
    const bool a_in = group.count(c.part_a) > 0;
    const bool b_in = group.count(c.part_b) > 0;
    if (a_in == b_in) continue;
    const PartId& inside = a_in ? c.part_a : c.part_b;
    const PartId& outside = a_in ? c.part_b : c.part_a;
    for (const Vec3& p : c.points) out.push_back({p, inside, outside, ci});
  }
  return out;
}

std::string ns(const std::string& shape_id, const PartId& pid) {
  return shape_id + "/" + pid;
}

std::vector<std::vector<PartId>> carried_symmetry(const Shape& s,
                                                  const std::set<PartId>& keep) {
  std::vector<std::vector<PartId>> out;
  for (const auto& g : s.symmetry_groups) {
    std::vector<PartId> kept;
    for (const PartId& id : g)
      if (keep.count(id)) kept.push_back(ns(s.id, id));
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    if (kept.size() >= 2) out.push_back(std::move(kept));
  }
  return out;
}

std::set<PartId> complement(const Shape& s, const std::set<PartId>& group) {
  std::set<PartId> out;
  for (const Part& p : s.parts)
    if (!group.count(p.id())) out.insert(p.id());
  return out;
}

// Receiver parts outside the removed group plus their internal contacts.
void copy_kept(const Shape& receiver, const std::set<PartId>& kept, Shape& out) {
  for (const Part& p : receiver.parts)
    if (kept.count(p.id())) out.parts.push_back(p.with_id(ns(receiver.id, p.id())));
  for (const ContactPoint& c : receiver.contacts) {
    if (kept.count(c.part_a) && kept.count(c.part_b)) {
      ContactPoint copy = c;
      copy.part_a = ns(receiver.id, c.part_a);
      copy.part_b = ns(receiver.id, c.part_b);
      out.contacts.push_back(std::move(copy));
    }
  }
}

void copy_internal_contacts(const Shape& donor, const std::set<PartId>& group,
                            const SimilarityTransform& t, Shape& out) {
  for (const ContactPoint& c : donor.contacts) {
    if (group.count(c.part_a) && group.count(c.part_b)) {
      ContactPoint copy = c;
      copy.part_a = ns(donor.id, c.part_a);
      copy.part_b = ns(donor.id, c.part_b);
      for (Vec3& p : copy.points) p = t.apply(p);
      out.contacts.push_back(std::move(copy));
    }
  }
}

void check_distinct(const Shape& a, const Shape& b) {
  if (a.id == b.id)
    throw Error(ErrorCode::InvalidArgument, "crossover needs two distinct shapes",
                a.id);
}

}  // namespace

Shape place_group(const Shape& receiver, const PartGroup& removed,
                  const Shape& donor, const PartGroup& incoming,
                  std::string offspring_id, const CrossoverOptions& opts) {
  check_distinct(receiver, donor);
  if (removed.is_null() || incoming.is_null())
    throw Error(ErrorCode::InvalidArgument, "exchange needs two non-null groups");

  const double diag = receiver.bbox().diagonal();
  const Aabb src_box = bbox_of(incoming.part_ids, donor);
  const Aabb dst_box = bbox_of(removed.part_ids, receiver);
  SimilarityTransform placement;
  try {
    placement = initial_alignment(src_box, dst_box);
  } catch (const Error& e) {
    throw Error(ErrorCode::AlignmentImpossible, e.what(),
                donor.id + " -> " + receiver.id);
  }

  const std::set<PartId> kept = complement(receiver, removed.part_ids);
  const std::vector<FlatPoint> freed = boundary_points(receiver, removed.part_ids);
  const std::vector<FlatPoint> carried = boundary_points(donor, incoming.part_ids);

  bool refined = false;
  ContactMatch match;
  if (!freed.empty() && !carried.empty()) {
    std::vector<Vec3> src, dst;
    for (const FlatPoint& f : carried) src.push_back(placement.apply(f.point));
    for (const FlatPoint& f : freed) dst.push_back(f.point);
    match = match_contacts(src, dst);
    const SimilarityTransform fine =
        refined_alignment(match, diag, opts.degenerate_offset);
    if (accept_or_revert(max_residual(match, fine), diag, opts.revert_fraction) ==
        PlacementChoice::Refined) {
      placement = placement.then(fine);
      refined = true;
    }
  }

  Shape out;
  out.id = std::move(offspring_id);
  copy_kept(receiver, kept, out);
  for (const Part& p : donor.parts) {
    if (!incoming.part_ids.count(p.id())) continue;
    const Part moved = p.transformed(placement.scale, placement.translation);
    out.parts.push_back(
        restore_proportions(moved, placement.scale, opts.proportion_factor)
            .part.with_id(ns(donor.id, p.id())));
  }
  copy_internal_contacts(donor, incoming.part_ids, placement, out);

  // Rewire: every matched pair becomes a connection between the incoming part
  // and the receiver part that lost its contact. Whole donor contacts whose
  // points all land on one receiver part keep their kind.
  std::vector<char> target_used(freed.size(), 0);
  std::map<std::pair<std::size_t, PartId>, std::vector<Vec3>> by_contact;
  for (const auto& e : match.pairs) {
    const FlatPoint& s = carried[e.source];
    const FlatPoint& t = freed[e.target];
    target_used[e.target] = 1;
    by_contact[{s.contact, t.outside}].push_back(
        0.5 * (placement.apply(s.point) + t.point));
  }
  for (const auto& [key, points] : by_contact) {
    const ContactPoint& src_contact = donor.contacts[key.first];
    const PartId inside = incoming.part_ids.count(src_contact.part_a)
                              ? src_contact.part_a
                              : src_contact.part_b;
    const PartId a = ns(donor.id, inside);
    const PartId b = ns(receiver.id, key.second);
    if (points.size() == expected_point_count(src_contact.kind)) {
      out.contacts.push_back({a, b, src_contact.kind, points});
    } else {
      for (const Vec3& p : points) out.contacts.push_back({a, b, ContactKind::Single, {p}});
    }
  }
  // Unmatched freed contacts attach to the nearest incoming contact when the
  // two are within the revert threshold.
  for (std::size_t j = 0; j < freed.size(); ++j) {
    if (target_used[j] || carried.empty()) continue;
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < carried.size(); ++i) {
      const double d = (placement.apply(carried[i].point) - freed[j].point).norm();
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    if (best_d <= opts.revert_fraction * diag) {
      out.contacts.push_back(
          {ns(donor.id, carried[best].inside), ns(receiver.id, freed[j].outside),
           ContactKind::Single,
           {0.5 * (placement.apply(carried[best].point) + freed[j].point)}});
      continue;
    }
    // Otherwise fall back to the closest placed part, if it is near enough.
    const PartId outside = ns(receiver.id, freed[j].outside);
    const Part& other = out.parts[out.part_index(outside)];
    ClosestPoints nearest;
    PartId nearest_id;
    for (const PartId& id : incoming.part_ids) {
      const PartId placed = ns(donor.id, id);
      const ClosestPoints c = closest_points_parts(out.parts[out.part_index(placed)], other);
      if (c.distance < nearest.distance) {
        nearest = c;
        nearest_id = placed;
      }
    }
    if (nearest.distance <= opts.revert_fraction * diag) {
      out.contacts.push_back({nearest_id, outside, ContactKind::Single,
                              {0.5 * (nearest.on_a + nearest.on_b)}});
    }
  }

  out.symmetry_groups = carried_symmetry(receiver, kept);
  for (auto& g : carried_symmetry(donor, incoming.part_ids))
    out.symmetry_groups.push_back(std::move(g));
  out.categories = receiver.categories;
  out.categories.insert(donor.categories.begin(), donor.categories.end());

  Provenance prov;
  prov.parents = {receiver.id, donor.id};
  prov.operation = "exchange";
  for (const PartId& id : kept) prov.parent_a_parts.push_back(ns(receiver.id, id));
  for (const PartId& id : incoming.part_ids)
    prov.parent_b_parts.push_back(ns(donor.id, id));
  prov.incoming_origin = incoming.origin;
  prov.refined = refined;
  out.provenance = std::move(prov);
  return out;
}

std::pair<Shape, Shape> exchange(const Shape& s_a, const PartGroup& g_a,
                                 const Shape& s_b, const PartGroup& g_b,
                                 const CrossoverOptions& opts) {
  return {place_group(s_a, g_a, s_b, g_b, s_a.id + "+" + s_b.id, opts),
          place_group(s_b, g_b, s_a, g_a, s_b.id + "+" + s_a.id, opts)};
}

std::vector<InsertionAnchor> insertion_anchors(const Shape& donor,
                                               const PartGroup& g) {
  const RelationGraph graph(donor);
  const Vec3 center = bbox_of(g.part_ids, donor).center();
  std::vector<InsertionAnchor> out;
  for (const PartId& id : group_frontier(g, graph)) {
    const Part& p = donor.parts[donor.part_index(id)];
    if (!p.label()) continue;
    out.push_back({*p.label(), id, p.bbox().center() - center});
  }
  return out;
}

InsertionSite locate_insertion(const Shape& donor, const PartGroup& g,
                               const Shape& receiver) {
  const std::vector<InsertionAnchor> anchors = insertion_anchors(donor, g);
  const std::set<Label> present = receiver.labels();

  // Mean donor vector per participating label.
  std::map<Label, std::pair<Vec3, int>> per_label;
  for (const InsertionAnchor& a : anchors) {
    if (!present.count(a.label)) continue;
    auto& [sum, count] = per_label.try_emplace(a.label, Vec3::Zero(), 0).first->second;
    sum += a.translation;
    ++count;
  }
  if (per_label.empty())
    throw Error(ErrorCode::NoAnchorLabels,
                "no label adjacent to the group exists in the receiver",
                g.shape_id + " -> " + receiver.id);

  std::map<Label, Vec3> mean;
  Vec3 donor_avg = Vec3::Zero();
  for (const auto& [label, acc] : per_label) {
    mean[label] = acc.first / acc.second;
    donor_avg += mean[label];
  }
  donor_avg /= static_cast<double>(mean.size());

  auto parts_with = [&](const Label& l) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < receiver.parts.size(); ++i)
      if (receiver.parts[i].label() == l) idx.push_back(i);
    return idx;
  };

  InsertionSite best;
  best.cost = std::numeric_limits<double>::infinity();
  for (const InsertionAnchor& a : anchors) {
    if (!mean.count(a.label)) continue;
    for (std::size_t r : parts_with(a.label)) {
      const Vec3 candidate = receiver.parts[r].bbox().center() - a.translation;
      InsertionSite site{candidate, {}, 0.0};
      Vec3 avg = Vec3::Zero();
      for (const auto& [label, v] : mean) {
        std::size_t chosen = 0;
        double chosen_err = std::numeric_limits<double>::infinity();
        for (std::size_t q : parts_with(label)) {
          const Vec3 vec = receiver.parts[q].bbox().center() - candidate;
          const double err = (vec - v).norm();
          if (err < chosen_err) {
            chosen_err = err;
            chosen = q;
          }
        }
        avg += receiver.parts[chosen].bbox().center() - candidate;
        site.anchors.emplace_back(label, receiver.parts[chosen].id());
      }
      avg /= static_cast<double>(mean.size());
      site.cost = (avg - donor_avg).norm();
      if (site.cost < best.cost) best = std::move(site);
    }
  }
  return best;
}

Shape insert(const Shape& donor, const PartGroup& g, const Shape& receiver,
             std::string offspring_id, const CrossoverOptions& opts) {
  check_distinct(receiver, donor);
  if (g.is_null())
    throw Error(ErrorCode::InvalidArgument, "cannot insert the null group");
  const InsertionSite site = locate_insertion(donor, g, receiver);
  const Aabb src_box = bbox_of(g.part_ids, donor);
  SimilarityTransform move;
  move.translation = site.position - src_box.center();

  Aabb placed;
  placed.min = move.apply(src_box.min);
  placed.max = move.apply(src_box.max);

  // Occupied spot: fall back to a regular exchange with the occupant.
  const std::vector<PartGroup> groups = enumerate_part_groups(receiver, opts.groups);
  const PartGroup* occupant = nullptr;
  double best_iou = opts.occupancy_iou;
  for (const PartGroup& rg : groups) {
    const double iou = intersection_over_union(placed, bbox_of(rg.part_ids, receiver));
    if (iou > best_iou) {
      best_iou = iou;
      occupant = &rg;
    }
  }
  if (occupant)
    return place_group(receiver, *occupant, donor, g, std::move(offspring_id), opts);

  Shape out;
  out.id = std::move(offspring_id);
  copy_kept(receiver, complement(receiver, {}), out);
  for (const Part& p : donor.parts) {
    if (g.part_ids.count(p.id()))
      out.parts.push_back(p.transformed(move.scale, move.translation)
                              .with_id(ns(donor.id, p.id())));
  }
  copy_internal_contacts(donor, g.part_ids, move, out);

  std::map<Label, PartId> anchor_for(site.anchors.begin(), site.anchors.end());
  for (const ContactPoint& c : donor.contacts) {
    const bool a_in = g.part_ids.count(c.part_a) > 0;
    const bool b_in = g.part_ids.count(c.part_b) > 0;
    if (a_in == b_in) continue;
    const PartId& inside = a_in ? c.part_a : c.part_b;
    const PartId& outside = a_in ? c.part_b : c.part_a;
    const auto& label = donor.parts[donor.part_index(outside)].label();
    if (!label || !anchor_for.count(*label)) continue;
    ContactPoint moved{ns(donor.id, inside), ns(receiver.id, anchor_for[*label]),
                       c.kind, c.points};
    for (Vec3& p : moved.points) p = move.apply(p);
    out.contacts.push_back(std::move(moved));
  }

  out.symmetry_groups = carried_symmetry(receiver, complement(receiver, {}));
  for (auto& sg : carried_symmetry(donor, g.part_ids))
    out.symmetry_groups.push_back(std::move(sg));
  out.categories = receiver.categories;
  out.categories.insert(donor.categories.begin(), donor.categories.end());

  Provenance prov;
  prov.parents = {receiver.id, donor.id};
  prov.operation = "insert";
  for (const Part& p : receiver.parts) prov.parent_a_parts.push_back(ns(receiver.id, p.id()));
  for (const PartId& id : g.part_ids) prov.parent_b_parts.push_back(ns(donor.id, id));
  prov.incoming_origin = g.origin;
  out.provenance = std::move(prov);
  return out;
}

}  // namespace fame
