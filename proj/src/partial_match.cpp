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

#include "fame/partial_match.hpp"

#include <algorithm>
#include <map>

#include "fame/error.hpp"

namespace fame {

ScoringContext::ScoringContext(const Shape& shape, std::size_t sample_count)
    : shape_(&shape), sample_(sample_shape(shape, sample_count)), graph_(shape) {}

SubsetEvaluation evaluate_subset(const ScoringContext& ctx, const CategoryModel& model,
                                 std::vector<std::size_t> parts,
                                 const StabilityOptions& stability) {
  std::sort(parts.begin(), parts.end());
  SubsetEvaluation e;
  e.parts = std::move(parts);
  if (e.parts.empty()) return e;
  const ShapeView view{&ctx.shape(), e.parts};
  e.raw_score = model.raw_score(view, ctx.sample());
  e.connected = ctx.graph().is_connected_indices(e.parts);
  e.stable = check_stability(view, ctx.sample(), stability);
  e.space_clear = true;
  for (const Label& label : view.labels()) {
    if (!model.has_functional_space(label)) continue;
    if (!check_functional_space(view, label, model)) {
      e.space_clear = false;
      break;
    }
  }
  return e;
}

namespace {

std::vector<PartId> ids_of(const Shape& s, const std::vector<std::size_t>& parts) {
  std::vector<PartId> ids;
  for (std::size_t i : parts) ids.push_back(s.parts[i].id());
  std::sort(ids.begin(), ids.end());
  return ids;
}

// Higher score first; equal scores prefer the lexicographically smaller ids.
struct Ranked {
  const SubsetEvaluation* eval;
  std::vector<PartId> ids;
};

bool ranks_before(const Ranked& a, const Ranked& b) {
  if (a.eval->raw_score != b.eval->raw_score)
    return a.eval->raw_score > b.eval->raw_score;
  return a.ids < b.ids;
}

class BeamSearch {
 public:
  BeamSearch(const ScoringContext& ctx, const CategoryModel& model,
             const MatchOptions& opts)
      : ctx_(ctx), model_(model), opts_(opts) {}

  const SubsetEvaluation& eval(const std::vector<std::size_t>& parts) {
    auto it = memo_.find(parts);
    if (it == memo_.end()) {
      it = memo_.emplace(parts, evaluate_subset(ctx_, model_, parts, opts_.stability))
               .first;
      consider(it->second);
    }
    return it->second;
  }

  PartialMatchResult run() {
    const std::size_t n = ctx_.shape().parts.size();
    std::vector<std::size_t> full(n);
    for (std::size_t i = 0; i < n; ++i) full[i] = i;
    eval(full);

    // Every first-level node is expanded; later levels keep the top w plus
    // the best stable node.
    std::vector<std::vector<std::size_t>> expand = children_of({full}).first;
    for (const auto& c : expand) eval(c);
    while (!expand.empty()) {
      auto [children, parent_score] = children_of(expand);
      if (children.empty()) break;
      bool improved = false;
      for (std::size_t k = 0; k < children.size(); ++k)
        if (eval(children[k]).raw_score > parent_score[k]) improved = true;
      if (!improved) break;
      expand = next_beam(children);
    }

    if (opts_.include_provenance_candidates && ctx_.shape().provenance) {
      for (const auto* list : {&ctx_.shape().provenance->parent_a_parts,
                               &ctx_.shape().provenance->parent_b_parts}) {
        std::vector<std::size_t> idx;
        for (const PartId& id : *list)
          if (auto i = ctx_.shape().find_part(id)) idx.push_back(*i);
        std::sort(idx.begin(), idx.end());
        if (!idx.empty()) eval(idx);
      }
    }

    PartialMatchResult r;
    r.category = model_.category();
    r.evaluated = memo_.size();
    if (best_) {
      r.best_subset = best_ids_;
      r.raw_score = best_->raw_score;
      r.normalized_score = model_.distributions().normalize(r.raw_score);
    }
    return r;
  }

 private:
  void consider(const SubsetEvaluation& e) {
    if (!e.valid()) return;
    std::vector<PartId> ids = ids_of(ctx_.shape(), e.parts);
    if (!best_ || ranks_before({&e, ids}, {best_, best_ids_})) {
      best_ = &e;
      best_ids_ = std::move(ids);
    }
  }

  // Unique single-part removals of the given nodes, each paired with the best
  // score among the parents that produce it.
  std::pair<std::vector<std::vector<std::size_t>>, std::vector<double>> children_of(
      const std::vector<std::vector<std::size_t>>& nodes) {
    std::map<std::vector<std::size_t>, double> found;
    for (const auto& node : nodes) {
      if (node.size() <= 1) continue;
      const double score = eval(node).raw_score;
      for (std::size_t drop = 0; drop < node.size(); ++drop) {
        std::vector<std::size_t> child;
        child.reserve(node.size() - 1);
        for (std::size_t k = 0; k < node.size(); ++k)
          if (k != drop) child.push_back(node[k]);
        auto [it, inserted] = found.emplace(std::move(child), score);
        if (!inserted) it->second = std::max(it->second, score);
      }
    }
    std::pair<std::vector<std::vector<std::size_t>>, std::vector<double>> out;
    for (auto& [child, score] : found) {
      out.first.push_back(child);
      out.second.push_back(score);
    }
    return out;
  }

  std::vector<std::vector<std::size_t>> next_beam(
      const std::vector<std::vector<std::size_t>>& level) {
    std::vector<Ranked> candidates;
    for (const auto& c : level) {
      const SubsetEvaluation& e = memo_.at(c);
      // Stability may be restored deeper in the search; the other two
      // constraints cannot.
      if (e.connected && e.space_clear) candidates.push_back({&e, ids_of(ctx_.shape(), c)});
    }
    std::sort(candidates.begin(), candidates.end(), ranks_before);
    std::vector<std::vector<std::size_t>> beam;
    for (std::size_t k = 0; k < candidates.size() && k < opts_.beam_width; ++k)
      beam.push_back(candidates[k].eval->parts);
    for (const Ranked& c : candidates) {
      if (!c.eval->stable) continue;
      if (std::find(beam.begin(), beam.end(), c.eval->parts) == beam.end())
        beam.push_back(c.eval->parts);
      break;
    }
    return beam;
  }

  const ScoringContext& ctx_;
  const CategoryModel& model_;
  const MatchOptions& opts_;
  std::map<std::vector<std::size_t>, SubsetEvaluation> memo_;
  const SubsetEvaluation* best_ = nullptr;
  std::vector<PartId> best_ids_;
};

}  // namespace

PartialMatchResult partial_match(const ScoringContext& ctx, const CategoryModel& model,
                                 const MatchOptions& opts) {
  if (ctx.shape().parts.empty()) return {model.category(), {}, 0.0, 0.0, 0};
  return BeamSearch(ctx, model, opts).run();
}

PartialMatchResult partial_match(const Shape& shape, const CategoryModel& model,
                                 const MatchOptions& opts) {
  const ScoringContext ctx(shape, opts.sample_count);
  return partial_match(ctx, model, opts);
}

PartialMatchResult simplified_partial_match(const ScoringContext& ctx,
                                            const CategoryModel& model,
                                            const MatchOptions& opts) {
  const Shape& shape = ctx.shape();
  if (!shape.provenance)
    throw Error(ErrorCode::MissingProvenance,
                "simplified matching needs the offspring's parent part sets", shape.id);
  std::vector<std::vector<std::size_t>> candidates;
  candidates.push_back(ShapeView::whole(shape).parts);
  for (const auto* list :
       {&shape.provenance->parent_a_parts, &shape.provenance->parent_b_parts}) {
    std::vector<std::size_t> idx;
    for (const PartId& id : *list) idx.push_back(shape.part_index(id));
    candidates.push_back(std::move(idx));
  }

  PartialMatchResult r;
  r.category = model.category();
  const SubsetEvaluation* best = nullptr;
  std::vector<SubsetEvaluation> evals;
  evals.reserve(candidates.size());
  for (auto& c : candidates) evals.push_back(evaluate_subset(ctx, model, c, opts.stability));
  r.evaluated = evals.size();
  std::vector<PartId> best_ids;
  for (const SubsetEvaluation& e : evals) {
    if (!e.valid()) continue;
    std::vector<PartId> ids = ids_of(shape, e.parts);
    if (!best || ranks_before({&e, ids}, {best, best_ids})) {
      best = &e;
      best_ids = std::move(ids);
    }
  }
  if (best) {
    r.best_subset = best_ids;
    r.raw_score = best->raw_score;
    r.normalized_score = model.distributions().normalize(r.raw_score);
  }
  return r;
}

ShapeScore score_shape(const Shape& shape, const ModelSet& models, ScoringMode mode,
                       const MatchOptions& opts, double theta) {
  if (models.empty())
    throw Error(ErrorCode::NoApplicableModel, "no functionality model applies",
                shape.id);
  const ScoringContext ctx(shape, opts.sample_count);
  ShapeScore s;
  for (const auto& m : models) {
    PartialMatchResult r = mode == ScoringMode::Full
                               ? partial_match(ctx, *m, opts)
                               : simplified_partial_match(ctx, *m, opts);
    s.plausibility = std::max(s.plausibility, r.normalized_score);
    if (r.normalized_score > theta) ++s.multi_functionality;
    s.per_model.push_back(std::move(r));
  }
  return s;
}

double simplified_partial_match(const Shape& offspring, const ModelSet& models,
                                const MatchOptions& opts) {
  return score_shape(offspring, models, ScoringMode::Simplified, opts).plausibility;
}

double plausibility_score(const Shape& shape, const ModelSet& models,
                          const MatchOptions& opts) {
  return score_shape(shape, models, ScoringMode::Full, opts).plausibility;
}

int multi_functionality_score(const Shape& shape, const ModelSet& models, double theta,
                              const MatchOptions& opts) {
  return score_shape(shape, models, ScoringMode::Full, opts, theta).multi_functionality;
}

}  // namespace fame
