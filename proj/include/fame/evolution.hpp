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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "fame/category_model.hpp"
#include "fame/crossover.hpp"
#include "fame/partial_match.hpp"

namespace fame {

enum class Ranking { Plausibility, MultiFunctionality };

const char* to_string(Ranking r);
const char* to_string(ScoringMode m);
Ranking parse_ranking(std::string_view text);       // throws InvalidArgument
ScoringMode parse_scoring_mode(std::string_view text);

struct EvolutionConfig {
  std::set<Label> required_labels;  // every emitted shape carries all of them
  int generations = 1;
  std::uint64_t seed = 0;
  double diversity_keep_fraction = 0.5;
  Ranking ranking = Ranking::Plausibility;
  ScoringMode scoring_mode = ScoringMode::Full;
  double theta = 0.9;
  std::size_t max_offspring_per_pair = 32;
  std::size_t selection_size = 8;  // headless selector keeps the top k
  std::string descriptor = "reduced-lfd";
  CrossoverOptions crossover;
  MatchOptions matching;

  void validate() const;  // throws InvalidArgument
};

nlohmann::json to_json(const EvolutionConfig& c);
EvolutionConfig config_from_json(const nlohmann::json& j);

struct ScoredShape {
  Shape shape;
  double plausibility = 0.0;
  int multi_functionality = 0;
};

struct Generation {
  int index = 0;
  std::vector<ScoredShape> shapes;  // ranked
  std::vector<std::string> selected;
};

/// Picks the next parents from a ranked generation.
using Selector = std::function<std::vector<std::string>(const Generation&)>;

Selector top_k_selector(std::size_t k);

/// Stable ranking, best first: by plausibility, or by (multi-functionality,
/// plausibility). Remaining ties go to the smaller id.
void rank(std::vector<ScoredShape>& shapes, Ranking mode);

/// Scores each shape against the models that apply to its categories. Shapes
/// no model applies to score zero.
std::vector<ScoredShape> score_all(std::vector<Shape> shapes, const ModelSet& models,
                                   const EvolutionConfig& config);

struct SourcedGroup {
  const Shape* shape;
  PartGroup group;
};

/// Part groups of every parent, in parent order. The pool points into
/// `parents`, which must outlive it.
std::vector<SourcedGroup> group_pool(const std::vector<Shape>& parents,
                                     const GroupOptions& opts = {});

/// Adds each missing label from a randomly drawn carrying group, by exchange
/// with a group free of `protected_labels` or else by insertion. Returns
/// nullopt when some label cannot be added.
std::optional<Shape> insert_missing(Shape candidate, const std::set<Label>& missing,
                                    const std::set<Label>& protected_labels,
                                    const std::vector<SourcedGroup>& pool,
                                    std::mt19937_64& rng,
                                    const CrossoverOptions& opts = {});

/// One iteration: crossover of every ordered parent pair, diversity selection,
/// scoring and ranking. Offspring are named g<index>_<seq>. Throws
/// EmptyGeneration.
Generation breed(const std::vector<Shape>& parents, int index, const ModelSet& models,
                 const EvolutionConfig& config);

/// Generations 1..config.generations, each bred from the shapes the selector
/// picked in the previous one (all of g0 for the first).
std::vector<Generation> evolve(const std::vector<Shape>& g0, const ModelSet& models,
                               const EvolutionConfig& config,
                               const Selector& selector = top_k_selector(8));

/// Sidecar labels win; unlabeled shapes get labels predicted by the models
/// that apply to them.
std::vector<Shape> label_population(std::vector<Shape> shapes, const ModelSet& models);

nlohmann::json manifest_json(const Generation& g);
/// Writes gen_<index>/ with one OBJ + JSON per shape and manifest.json.
void write_generation(const std::filesystem::path& out_dir, const Generation& g);

}  // namespace fame
