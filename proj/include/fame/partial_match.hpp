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

#include <string>
#include <vector>

#include "fame/category_model.hpp"
#include "fame/relation_graph.hpp"
#include "fame/sampling.hpp"
#include "fame/validity.hpp"

namespace fame {

enum class ScoringMode { Full, Simplified };

struct MatchOptions {
  std::size_t beam_width = 2;
  std::size_t sample_count = kDefaultSampleCount;
  StabilityOptions stability;
  /// Also score the two parent-derived part sets recorded in provenance.
  bool include_provenance_candidates = true;
};

/// Everything partial matching needs about one shape, computed once.
class ScoringContext {
 public:
  explicit ScoringContext(const Shape& shape,
                          std::size_t sample_count = kDefaultSampleCount);

  const Shape& shape() const { return *shape_; }
  const PointSample& sample() const { return sample_; }
  const RelationGraph& graph() const { return graph_; }

 private:
  const Shape* shape_;
  PointSample sample_;
  RelationGraph graph_;
};

struct SubsetEvaluation {
  std::vector<std::size_t> parts;  // sorted indices into shape.parts
  double raw_score = 0.0;
  bool connected = false;
  bool stable = false;
  bool space_clear = false;

  bool valid() const { return connected && stable && space_clear; }
};

/// Scores one subset and runs the three validity checks. Functional space is
/// checked for every label of the subset that the model knows.
SubsetEvaluation evaluate_subset(const ScoringContext& ctx,
                                 const CategoryModel& model,
                                 std::vector<std::size_t> parts,
                                 const StabilityOptions& stability = {});

struct PartialMatchResult {
  std::string category;
  std::vector<PartId> best_subset;  // empty when no subset is valid
  double raw_score = 0.0;
  double normalized_score = 0.0;
  std::size_t evaluated = 0;        // distinct subsets scored
};

/// Reverse beam search from the whole shape, removing one part per step.
PartialMatchResult partial_match(const ScoringContext& ctx, const CategoryModel& model,
                                 const MatchOptions& opts = {});
PartialMatchResult partial_match(const Shape& shape, const CategoryModel& model,
                                 const MatchOptions& opts = {});

/// Best of {whole shape, parent-A parts, parent-B parts}. Throws
/// MissingProvenance.
PartialMatchResult simplified_partial_match(const ScoringContext& ctx,
                                            const CategoryModel& model,
                                            const MatchOptions& opts = {});
double simplified_partial_match(const Shape& offspring, const ModelSet& models,
                                const MatchOptions& opts = {});

struct ShapeScore {
  double plausibility = 0.0;
  int multi_functionality = 0;
  std::vector<PartialMatchResult> per_model;
};

/// Scores the shape under every model (the caller picks the applicable
/// ones). Throws NoApplicableModel for an empty set.
ShapeScore score_shape(const Shape& shape, const ModelSet& models, ScoringMode mode,
                       const MatchOptions& opts = {}, double theta = 0.9);

/// Max normalized partial-match score over the models.
double plausibility_score(const Shape& shape, const ModelSet& models,
                          const MatchOptions& opts = {});

/// Number of models whose normalized partial-match score exceeds theta.
int multi_functionality_score(const Shape& shape, const ModelSet& models,
                              double theta = 0.9, const MatchOptions& opts = {});

}  // namespace fame
