// Copyright 2026 The linkprop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LINKPROP_CLASSIFIER_HPP_
#define LINKPROP_CLASSIFIER_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linkprop/error.hpp"
#include "linkprop/graph.hpp"
#include "linkprop/labels.hpp"

namespace linkprop {

/// Which vertices are ranked and cut. Images is the default because images
/// are what gets classified; kAll ranks sites and images together.
enum class Population { kImages, kAll };

inline Population parse_population(std::string_view s) {
  if (s == "images") return Population::kImages;
  if (s == "all") return Population::kAll;
  throw validation_error("unknown population '" + std::string(s) +
                         "' (expected images or all)");
}

inline std::string_view to_string(Population p) {
  return p == Population::kImages ? "images" : "all";
}

inline std::vector<VertexId> population_vertices(const BipartiteGraph& g, Population p) {
  const size_t first = p == Population::kImages ? g.site_count() : 0;
  std::vector<VertexId> out;
  out.reserve(g.vertex_count() - first);
  for (size_t v = first; v < g.vertex_count(); ++v) out.push_back(static_cast<VertexId>(v));
  return out;
}

struct RankedVertex {
  VertexId vertex = 0;
  double ratio = 0.0;
  size_t rank = 0;  // 1-based
};

struct Verdict {
  VertexId vertex = 0;
  Label label = Label::kDecent;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

inline double adult_ratio(const Score& s, double epsilon) {
  return s.adult / (s.decent + epsilon);
}

/// Orders the population by adult/(decent + epsilon), highest first.
/// Ties go to the lower vertex index, which is key order within a partition.
inline std::vector<RankedVertex> rank(const ScoreMatrix& f,
                                      std::span<const VertexId> population,
                                      double epsilon) {
  if (!(epsilon > 0.0)) throw validation_error("epsilon must be positive");
  if (population.empty()) throw validation_error("ranking population is empty");
  std::vector<RankedVertex> out;
  out.reserve(population.size());
  for (VertexId v : population) {
    if (v >= f.size()) throw validation_error("population vertex outside score matrix");
    out.push_back({v, adult_ratio(f[v], epsilon), 0});
  }
  std::sort(out.begin(), out.end(), [](const RankedVertex& a, const RankedVertex& b) {
    if (a.ratio != b.ratio) return a.ratio > b.ratio;
    return a.vertex < b.vertex;
  });
  for (size_t r = 0; r < out.size(); ++r) out[r].rank = r + 1;
  return out;
}

/// floor(n * k), where k is read as the decimal the user typed: a product
/// lying within rounding noise below an integer counts as that integer.
inline size_t adult_count(size_t n, double k) {
  const double x = static_cast<double>(n) * k;
  return static_cast<size_t>(std::floor(x + x * 1e-15 + 1e-12));
}

/// Labels the first floor(len * k) ranked vertices adult, the rest decent.
inline std::vector<Verdict> classify_top_k(std::span<const RankedVertex> ranked, double k) {
  if (!(k > 0.0 && k < 1.0)) throw validation_error("k must lie in (0, 1)");
  const size_t cut = adult_count(ranked.size(), k);
  std::vector<Verdict> out;
  out.reserve(ranked.size());
  for (size_t r = 0; r < ranked.size(); ++r) {
    out.push_back({ranked[r].vertex, r < cut ? Label::kAdult : Label::kDecent});
  }
  return out;
}

/// Naive rule: an image is adult iff at least one adjacent site is seeded
/// adult. One verdict per image, in image index order.
inline std::vector<Verdict> baseline_classify(const BipartiteGraph& g,
                                              const SeedLabels& seeds) {
  if (seeds.size() < g.site_count()) {
    throw validation_error("seed labels do not cover the site partition");
  }
  std::vector<Verdict> out;
  out.reserve(g.image_count());
  for (size_t i = 0; i < g.image_count(); ++i) {
    auto sites = g.image_neighbors(i);
    bool adult = std::any_of(sites.begin(), sites.end(), [&](VertexId s) {
      return seeds[s] == SeedLabel::kAdult;
    });
    out.push_back({g.image_vertex(i), adult ? Label::kAdult : Label::kDecent});
  }
  return out;
}

}  // namespace linkprop

#endif  // LINKPROP_CLASSIFIER_HPP_
