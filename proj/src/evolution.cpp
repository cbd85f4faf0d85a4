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

#include "fame/evolution.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <future>
#include <map>
#include <thread>

#include "fame/dataset.hpp"
#include "fame/descriptor.hpp"
#include "fame/error.hpp"

namespace fame {

const char* to_string(Ranking r) {
  return r == Ranking::Plausibility ? "plausibility" : "multi_functionality";
}

const char* to_string(ScoringMode m) {
  return m == ScoringMode::Full ? "full" : "simplified";
}

Ranking parse_ranking(std::string_view text) {
  if (text == "plausibility") return Ranking::Plausibility;
  if (text == "multi_functionality" || text == "multi") return Ranking::MultiFunctionality;
  throw Error(ErrorCode::InvalidArgument, "unknown ranking", std::string(text));
}

ScoringMode parse_scoring_mode(std::string_view text) {
  if (text == "full") return ScoringMode::Full;
  if (text == "simplified") return ScoringMode::Simplified;
  throw Error(ErrorCode::InvalidArgument, "unknown scoring mode", std::string(text));
}

void EvolutionConfig::validate() const {
  if (generations < 1)
    throw Error(ErrorCode::InvalidArgument, "generations must be at least 1");
  if (!(diversity_keep_fraction > 0.0 && diversity_keep_fraction <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "diversity keep fraction must lie in (0, 1]");
  if (max_offspring_per_pair == 0)
    throw Error(ErrorCode::InvalidArgument, "max offspring per pair must be positive");
  if (descriptor != "reduced-lfd")
    throw Error(ErrorCode::InvalidArgument, "unsupported descriptor", descriptor);
}

nlohmann::json to_json(const EvolutionConfig& c) {
  return {{"labels", c.required_labels},
          {"generations", c.generations},
          {"seed", c.seed},
          {"diversity_keep_fraction", c.diversity_keep_fraction},
          {"ranking", to_string(c.ranking)},
          {"scoring_mode", to_string(c.scoring_mode)},
          {"theta", c.theta},
          {"max_offspring_per_pair", c.max_offspring_per_pair},
          {"selection_size", c.selection_size},
          {"descriptor", c.descriptor}};
}

EvolutionConfig config_from_json(const nlohmann::json& j) {
  EvolutionConfig c;
  try {
    if (j.contains("labels")) c.required_labels = j.at("labels").get<std::set<Label>>();
    c.generations = j.value("generations", c.generations);
    c.seed = j.value("seed", c.seed);
    c.diversity_keep_fraction = j.value("diversity_keep_fraction", c.diversity_keep_fraction);
    if (j.contains("ranking")) c.ranking = parse_ranking(j.at("ranking").get<std::string>());
    if (j.contains("scoring_mode"))
      c.scoring_mode = parse_scoring_mode(j.at("scoring_mode").get<std::string>());
    c.theta = j.value("theta", c.theta);
    c.max_offspring_per_pair = j.value("max_offspring_per_pair", c.max_offspring_per_pair);
    c.selection_size = j.value("selection_size", c.selection_size);
    c.descriptor = j.value("descriptor", c.descriptor);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, "malformed evolution config", e.what());
  }
  c.validate();
  return c;
}

Selector top_k_selector(std::size_t k) {
  return [k](const Generation& g) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < g.shapes.size() && i < k; ++i)
      out.push_back(g.shapes[i].shape.id);
    return out;
  };
}

void rank(std::vector<ScoredShape>& shapes, Ranking mode) {
  std::stable_sort(shapes.begin(), shapes.end(),
                   [mode](const ScoredShape& a, const ScoredShape& b) {
                     if (mode == Ranking::MultiFunctionality &&
                         a.multi_functionality != b.multi_functionality)
                       return a.multi_functionality > b.multi_functionality;
                     if (a.plausibility != b.plausibility)
                       return a.plausibility > b.plausibility;
                     return a.shape.id < b.shape.id;
                   });
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) {
  return splitmix64(splitmix64(splitmix64(seed ^ splitmix64(a)) ^ b) ^ c);
}

// Runs fn(i) for i in [0, n) on a small worker pool. Results stay indexed so
// the output never depends on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, Fn fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    }));
  }
  for (auto& j : jobs) j.get();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

bool has_all(const Shape& s, const std::set<Label>& labels) {
  const std::set<Label> have = s.labels();
  return std::includes(have.begin(), have.end(), labels.begin(), labels.end());
}

std::uint64_t draw(std::mt19937_64& rng, std::size_t n) { return rng() % n; }

// Uniform subset of at most k indices from [0, n), returned ascending.
std::vector<std::size_t> subsample(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  if (n <= k) return idx;
  for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + draw(rng, n - i)]);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

// Part ids that gained a "<prefix>/" namespace lose it again, unless that
// would make two ids collide.
void strip_namespace(Shape& s, const std::string& prefix) {
  const std::string p = prefix + "/";
  auto strip = [&](const PartId& id) {
    return id.rfind(p, 0) == 0 ? id.substr(p.size()) : id;
  };
  std::set<PartId> seen;
  for (const Part& part : s.parts)
    if (!seen.insert(strip(part.id())).second) return;
  for (Part& part : s.parts) part = part.with_id(strip(part.id()));
  for (ContactPoint& c : s.contacts) {
    c.part_a = strip(c.part_a);
    c.part_b = strip(c.part_b);
  }
  for (auto& g : s.symmetry_groups)
    for (PartId& id : g) id = strip(id);
  if (s.provenance) {
    for (PartId& id : s.provenance->parent_a_parts) id = strip(id);
    for (PartId& id : s.provenance->parent_b_parts) id = strip(id);
  }
}

void rename_shape(Shape& s, const std::string& id) {
  const std::string old = s.id;
  s.id = id;
  if (old == id) return;
  const std::string p = old + "/";
  auto fix = [&](PartId& pid) {
    if (pid.rfind(p, 0) == 0) pid = id + "/" + pid.substr(p.size());
  };
  for (Part& part : s.parts) {
    PartId pid = part.id();
    fix(pid);
    part = part.with_id(pid);
  }
  for (ContactPoint& c : s.contacts) {
    fix(c.part_a);
    fix(c.part_b);
  }
  for (auto& g : s.symmetry_groups)
    for (PartId& pid : g) fix(pid);
  if (s.provenance) {
    for (PartId& pid : s.provenance->parent_a_parts) fix(pid);
    for (PartId& pid : s.provenance->parent_b_parts) fix(pid);
  }
}

std::string geometry_key(const Shape& s) {
  std::vector<std::string> rows;
  char buf[256];
  for (const Part& p : s.parts) {
    const Aabb& b = p.bbox();
    std::snprintf(buf, sizeof buf, "%s|%.9g,%.9g,%.9g,%.9g,%.9g,%.9g|%zu",
                  p.label().value_or("").c_str(), b.min.x(), b.min.y(), b.min.z(),
                  b.max.x(), b.max.y(), b.max.z(), p.triangles().size());
    rows.emplace_back(buf);
  }
  std::sort(rows.begin(), rows.end());
  std::string key;
  for (const auto& r : rows) key += r + ";";
  return key;
}

bool valid_offspring(const Shape& s) {
  try {
    s.validate(s.id);
    return !s.parts.empty();
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

std::vector<SourcedGroup> group_pool(const std::vector<Shape>& parents,
                                     const GroupOptions& opts) {
  std::vector<SourcedGroup> out;
  for (const Shape& s : parents)
    for (PartGroup& g : enumerate_part_groups(s, opts)) out.push_back({&s, std::move(g)});
  return out;
}

std::optional<Shape> insert_missing(Shape candidate, const std::set<Label>& missing,
                                    const std::set<Label>& protected_labels,
                                    const std::vector<SourcedGroup>& pool,
                                    std::mt19937_64& rng, const CrossoverOptions& opts) {
  std::set<Label> keep;
  for (const Label& l : candidate.labels())
    if (protected_labels.count(l)) keep.insert(l);
  const std::vector<std::string> original_parents =
      candidate.provenance ? candidate.provenance->parents : std::vector<std::string>{};

  for (const Label& label : missing) {
    if (candidate.labels().count(label)) {
      keep.insert(label);
      continue;
    }
    std::vector<const SourcedGroup*> carriers;
    for (const SourcedGroup& sg : pool)
      if (sg.group.labels.count(label) && sg.shape->id != candidate.id) carriers.push_back(&sg);
    if (carriers.empty()) return std::nullopt;
    const SourcedGroup& pick = *carriers[draw(rng, carriers.size())];

    std::set<Label> need = keep;
    need.insert(label);
    std::optional<Shape> next;

    std::vector<PartGroup> free_groups;
    for (PartGroup& g : enumerate_part_groups(candidate, opts.groups))
      if (!g.is_null() && !g.has_any_label(protected_labels) && !g.has_any_label(keep))
        free_groups.push_back(std::move(g));
    if (!free_groups.empty()) {
      const PartGroup& target = free_groups[draw(rng, free_groups.size())];
      try {
        Shape s = place_group(candidate, target, *pick.shape, pick.group, candidate.id, opts);
        if (has_all(s, need)) next = std::move(s);
      } catch (const Error&) {
      }
    }
    if (!next) {
      try {
        Shape s = insert(*pick.shape, pick.group, candidate, candidate.id, opts);
        if (has_all(s, need)) next = std::move(s);
      } catch (const Error&) {
      }
    }
    if (!next) return std::nullopt;
    strip_namespace(*next, candidate.id);
    if (!valid_offspring(*next)) return std::nullopt;
    candidate = std::move(*next);
    keep = std::move(need);
  }

  if (candidate.provenance) {
    std::vector<std::string> parents = original_parents;
    for (const std::string& p : candidate.provenance->parents)
      if (p != candidate.id && std::find(parents.begin(), parents.end(), p) == parents.end())
        parents.push_back(p);
    candidate.provenance->parents = std::move(parents);
  }
  return candidate;
}

std::vector<ScoredShape> score_all(std::vector<Shape> shapes, const ModelSet& models,
                                   const EvolutionConfig& config) {
  std::vector<ScoredShape> out(shapes.size());
  parallel_for(shapes.size(), [&](std::size_t i) {
    out[i].shape = std::move(shapes[i]);
    const ModelSet mine = applicable_models(out[i].shape, models);
    if (mine.empty()) return;
    // Input shapes carry no provenance, so they are always fully matched.
    const ScoringMode mode =
        out[i].shape.provenance ? config.scoring_mode : ScoringMode::Full;
    const ShapeScore s =
        score_shape(out[i].shape, mine, mode, config.matching, config.theta);
    out[i].plausibility = s.plausibility;
    out[i].multi_functionality = s.multi_functionality;
  });
  return out;
}

Generation breed(const std::vector<Shape>& parents, int index, const ModelSet& models,
                 const EvolutionConfig& config) {
  config.validate();
  if (parents.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "crossover needs at least two parents");
  const std::set<Label>& wanted = config.required_labels;

  const std::vector<SourcedGroup> pool = group_pool(parents, config.crossover.groups);
  std::vector<std::vector<const PartGroup*>> groups_of(parents.size());
  for (const SourcedGroup& sg : pool) {
    const auto i = static_cast<std::size_t>(sg.shape - parents.data());
    if (!sg.group.is_null()) groups_of[i].push_back(&sg.group);
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < parents.size(); ++a)
    for (std::size_t b = 0; b < parents.size(); ++b)
      if (a != b && parents[a].id != parents[b].id) pairs.emplace_back(a, b);

  std::vector<std::vector<Shape>> per_pair(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t k) {
    const auto [a, b] = pairs[k];
    const Shape& sa = parents[a];
    const Shape& sb = parents[b];
    std::mt19937_64 rng(stream_seed(config.seed, static_cast<std::uint64_t>(index), a, b));
    std::set<Label> missing;
    for (const Label& l : wanted)
      if (!sa.labels().count(l)) missing.insert(l);
    const std::string stem =
        "g" + std::to_string(index) + "_p" + std::to_string(k) + "_";

    std::vector<std::pair<const PartGroup*, const PartGroup*>> combos;
    if (missing.empty()) {
      for (const PartGroup* ga : groups_of[a])
        if (!ga->has_any_label(wanted))
          for (const PartGroup* gb : groups_of[b]) combos.emplace_back(ga, gb);
    } else {
      for (const PartGroup* gb : groups_of[b])
        if (gb->has_any_label(missing)) combos.emplace_back(nullptr, gb);
    }

    std::size_t n = 0;
    for (std::size_t c : subsample(combos.size(), config.max_offspring_per_pair, rng)) {
      const auto [ga, gb] = combos[c];
      const std::string id = stem + std::to_string(n++);
      std::optional<Shape> child;
      try {
        child = ga ? place_group(sa, *ga, sb, *gb, id, config.crossover)
                   : insert(sb, *gb, sa, id, config.crossover);
      } catch (const Error&) {
        continue;
      }
      if (!ga) {
        std::set<Label> still;
        for (const Label& l : wanted)
          if (!child->labels().count(l)) still.insert(l);
        if (!still.empty())
          child = insert_missing(std::move(*child), still, wanted, pool, rng,
                                 config.crossover);
      }
      if (child && has_all(*child, wanted) && valid_offspring(*child))
        per_pair[k].push_back(std::move(*child));
    }
  });

  std::vector<Shape> offspring;
  std::set<std::string> seen;
  for (auto& list : per_pair) {
    for (Shape& s : list) {
      if (!seen.insert(geometry_key(s)).second) continue;
      char id[32];
      std::snprintf(id, sizeof id, "g%d_%04zu", index, offspring.size());
      rename_shape(s, id);
      offspring.push_back(std::move(s));
    }
  }
  if (offspring.empty())
    throw Error(ErrorCode::EmptyGeneration, "no offspring survived",
                "generation " + std::to_string(index));

  Generation g;
  g.index = index;
  g.shapes = score_all(diversity_selection(offspring, config.diversity_keep_fraction),
                       models, config);
  rank(g.shapes, config.ranking);
  return g;
}

std::vector<Generation> evolve(const std::vector<Shape>& g0, const ModelSet& models,
                               const EvolutionConfig& config, const Selector& selector) {
  config.validate();
  std::vector<Generation> out;
  std::vector<Shape> parents = g0;
  for (int i = 1; i <= config.generations; ++i) {
    Generation g = breed(parents, i, models, config);
    g.selected = selector(g);
    std::vector<Shape> next;
    for (const std::string& id : g.selected) {
      auto it = std::find_if(g.shapes.begin(), g.shapes.end(),
                             [&](const ScoredShape& s) { return s.shape.id == id; });
      if (it == g.shapes.end())
        throw Error(ErrorCode::UnknownShapeId, "selected shape is not in the generation", id);
      next.push_back(it->shape);
    }
    parents = std::move(next);
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<Shape> label_population(std::vector<Shape> shapes, const ModelSet& models) {
  for (Shape& s : shapes) {
    if (!s.labels().empty()) continue;
    const ModelSet mine = applicable_models(s, models);
    if (mine.empty()) continue;
    const PointSample sample = sample_shape(s, kDefaultSampleCount);
    // Patches with the same label in several models merge by pointwise max.
    std::map<Label, std::vector<double>> merged;
    for (const auto& m : mine) {
      for (WeightField& f : m->predict(ShapeView::whole(s), sample)) {
        auto [it, fresh] = merged.try_emplace(f.patch_label, f.weights);
        if (!fresh)
          for (std::size_t k = 0; k < f.weights.size(); ++k)
            it->second[k] = std::max(it->second[k], f.weights[k]);
      }
    }
    std::vector<WeightField> fields;
    for (auto& [label, w] : merged) fields.push_back({label, std::move(w)});
    s = label_parts(s, sample, fields);
  }
  return shapes;
}

nlohmann::json manifest_json(const Generation& g) {
  nlohmann::json shapes = nlohmann::json::array();
  for (std::size_t r = 0; r < g.shapes.size(); ++r) {
    const ScoredShape& s = g.shapes[r];
    nlohmann::json e = {{"id", s.shape.id},
                        {"rank", r},
                        {"plausibility", s.plausibility},
                        {"multi_functionality", s.multi_functionality},
                        {"categories", s.shape.categories},
                        {"labels", s.shape.labels()},
                        {"mesh", s.shape.id + ".obj"}};
    e["provenance"] = s.shape.provenance ? to_json(*s.shape.provenance) : nlohmann::json();
    shapes.push_back(std::move(e));
  }
  return {{"index", g.index}, {"shapes", std::move(shapes)}, {"selected", g.selected}};
}

void write_generation(const std::filesystem::path& out_dir, const Generation& g) {
  const std::filesystem::path dir = out_dir / ("gen_" + std::to_string(g.index));
  std::filesystem::create_directories(dir);
  for (const ScoredShape& s : g.shapes) write_shape(dir, s.shape);
  std::ofstream out(dir / "manifest.json");
  out << manifest_json(g).dump(2) << '\n';
}

}  // namespace fame
