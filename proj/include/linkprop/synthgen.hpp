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

#ifndef LINKPROP_SYNTHGEN_HPP_
#define LINKPROP_SYNTHGEN_HPP_

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "linkprop/error.hpp"
#include "linkprop/evaluation.hpp"
#include "linkprop/graph.hpp"
#include "linkprop/labels.hpp"

namespace linkprop {

/// Counter-based generator: draw c is the SplitMix64 output mixing
/// seed + (c + 1) * 0x9E3779B97F4A7C15, so any draw can be recomputed from
/// (seed, c) alone.
class CounterRng {
 public:
  explicit CounterRng(uint64_t seed) : seed_(seed) {}

  uint64_t bits(uint64_t counter) const {
    uint64_t z = seed_ + (counter + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) from the top 53 bits.
  double uniform(uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

 private:
  uint64_t seed_;
};

/// Planted two-community instance. Communities are adult and decent; an
/// edge appears with p_in inside a community and p_out across.
struct PlantedParams {
  uint64_t adult_sites = 50;
  uint64_t decent_sites = 50;
  uint64_t adult_images = 500;
  uint64_t decent_images = 500;
  double p_in = 0.05;
  double p_out = 0.005;
  double label_noise = 0.1;
  uint64_t rng_seed = 42;
  uint64_t max_edges = 50'000'000;  // cap on the expected edge count

  uint64_t sites() const { return adult_sites + decent_sites; }
  uint64_t images() const { return adult_images + decent_images; }

  double expected_edges() const {
    double in_pairs = static_cast<double>(adult_sites) * static_cast<double>(adult_images) +
                      static_cast<double>(decent_sites) * static_cast<double>(decent_images);
    double out_pairs = static_cast<double>(adult_sites) * static_cast<double>(decent_images) +
                       static_cast<double>(decent_sites) * static_cast<double>(adult_images);
    return in_pairs * p_in + out_pairs * p_out;
  }

  void validate() const {
    auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!prob(p_in) || !prob(p_out) || !prob(label_noise)) {
      throw validation_error("probabilities must lie in [0, 1]");
    }
    if (adult_sites < 1 || decent_sites < 1 || adult_images < 1 || decent_images < 1) {
      throw validation_error("every community needs at least one site and one image");
    }
    if (sites() > UINT32_MAX || images() > UINT32_MAX) {
      throw validation_error("partition too large for 32-bit vertex indices");
    }
    if (expected_edges() > static_cast<double>(max_edges)) {
      throw validation_error("expected edge count " + std::to_string(expected_edges()) +
                             " exceeds cap " + std::to_string(max_edges));
    }
  }
};

struct SyntheticDataset {
  BipartiteGraph graph;
  SeedLabels seeds;  // over graph vertices; images unlabeled
  GroundTruth truth;  // image community
  std::vector<Label> site_truth;  // community of each site, by site index
};

inline std::string synthetic_site_key(uint64_t s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "site%08llu.net", static_cast<unsigned long long>(s));
  return buf;
}

inline std::string synthetic_image_key(uint64_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "img%09llu", static_cast<unsigned long long>(i));
  return buf;
}

/// Draw order: pair (s, i) uses counter s * images + i (site-major, image
/// minor), then the label flip of site s uses counter sites * images + s.
/// Adult sites and images take the low indices. Vertices left isolated by
/// the draw stay in the graph.
inline SyntheticDataset generate(const PlantedParams& params) {
  params.validate();
  const uint64_t n_sites = params.sites();
  const uint64_t n_images = params.images();
  const CounterRng rng(params.rng_seed);

  GraphBuilder builder;
  for (uint64_t s = 0; s < n_sites; ++s) builder.add_site(synthetic_site_key(s));
  for (uint64_t i = 0; i < n_images; ++i) builder.add_image(synthetic_image_key(i));
  for (uint64_t s = 0; s < n_sites; ++s) {
    const bool site_adult = s < params.adult_sites;
    for (uint64_t i = 0; i < n_images; ++i) {
      const bool image_adult = i < params.adult_images;
      const double p = site_adult == image_adult ? params.p_in : params.p_out;
      if (rng.uniform(s * n_images + i) < p) {
        builder.add_edge(static_cast<VertexId>(s), static_cast<VertexId>(i));
      }
    }
  }

  SyntheticDataset out;
  out.graph = builder.build();
  out.seeds = SeedLabels(out.graph.vertex_count());
  out.site_truth.reserve(n_sites);
  for (uint64_t s = 0; s < n_sites; ++s) {
    bool adult = s < params.adult_sites;
    out.site_truth.push_back(adult ? Label::kAdult : Label::kDecent);
    if (rng.uniform(n_sites * n_images + s) < params.label_noise) adult = !adult;
    out.seeds.set(s, adult ? SeedLabel::kAdult : SeedLabel::kDecent);
  }
  for (uint64_t i = 0; i < n_images; ++i) {
    out.truth.add(synthetic_image_key(i),
                  i < params.adult_images ? Label::kAdult : Label::kDecent);
  }
  return out;
}

/// Edge file, site-major.
inline void write_edge_file(std::ostream& os, const BipartiteGraph& g) {
  for (size_t s = 0; s < g.site_count(); ++s) {
    for (VertexId i : g.site_neighbors(s)) {
      os << g.site_keys()[s] << '\t' << g.image_keys()[i] << '\n';
    }
  }
}

inline void write_seed_file(std::ostream& os, const BipartiteGraph& g, const SeedLabels& seeds) {
  for (size_t s = 0; s < g.site_count(); ++s) {
    if (seeds[s] == SeedLabel::kUnlabeled) continue;
    os << g.site_keys()[s] << '\t' << (seeds[s] == SeedLabel::kAdult ? "adult" : "decent")
       << '\n';
  }
}

inline void write_truth_file(std::ostream& os, const GroundTruth& truth) {
  for (const auto& [key, label] : truth) os << key << '\t' << to_string(label) << '\n';
}

}  // namespace linkprop

#endif  // LINKPROP_SYNTHGEN_HPP_
