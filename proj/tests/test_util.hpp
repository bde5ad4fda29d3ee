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

// Shared fixtures for the test binaries: random graph generators and
// brute-force dense reference computations that do not go through the
// library's sparse or Eigen code paths.

#ifndef LINKPROP_TESTS_TEST_UTIL_HPP_
#define LINKPROP_TESTS_TEST_UTIL_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "linkprop/linkprop.hpp"

namespace linkprop::testing {

struct RandomInstance {
  BipartiteGraph graph;
  SeedLabels seeds;
};

inline std::string site_name(size_t s) { return "s" + std::to_string(1000 + s) + ".com"; }
inline std::string image_name(size_t i) { return "i" + std::to_string(1000 + i); }

/// Random bipartite graph with up to `max_vertices` vertices, random density
/// and random seeds on sites. Isolated vertices are allowed unless
/// `connected_only`, in which case every vertex gets at least one edge.
inline RandomInstance random_instance(std::mt19937_64& rng, size_t max_vertices,
                                      bool connected_only = false) {
  std::uniform_int_distribution<size_t> total(4, max_vertices);
  size_t n = total(rng);
  std::uniform_int_distribution<size_t> split(1, n - 1);
  size_t sites = split(rng);
  size_t images = n - sites;
  double density = std::uniform_real_distribution<double>(0.01, 0.5)(rng);
  std::bernoulli_distribution edge(density);

  GraphBuilder b;
  for (size_t s = 0; s < sites; ++s) b.add_site(site_name(s));
  for (size_t i = 0; i < images; ++i) b.add_image(image_name(i));
  std::vector<bool> site_hit(sites, false), image_hit(images, false);
  for (size_t s = 0; s < sites; ++s) {
    for (size_t i = 0; i < images; ++i) {
      if (edge(rng)) {
        b.add_edge(static_cast<VertexId>(s), static_cast<VertexId>(i));
        site_hit[s] = image_hit[i] = true;
      }
    }
  }
  if (connected_only) {
    std::uniform_int_distribution<size_t> pick_image(0, images - 1), pick_site(0, sites - 1);
    for (size_t s = 0; s < sites; ++s) {
      if (!site_hit[s]) b.add_edge(static_cast<VertexId>(s), static_cast<VertexId>(pick_image(rng)));
    }
    for (size_t i = 0; i < images; ++i) {
      if (!image_hit[i]) b.add_edge(static_cast<VertexId>(pick_site(rng)), static_cast<VertexId>(i));
    }
  }
  RandomInstance out{b.build(), {}};
  out.seeds = SeedLabels(out.graph.vertex_count());
  std::uniform_int_distribution<int> label(0, 2);
  for (size_t s = 0; s < sites; ++s) {
    out.seeds.set(s, static_cast<SeedLabel>(label(rng)));
  }
  return out;
}

using Dense = std::vector<std::vector<double>>;

/// A = D^-1/2 W D^-1/2 as a dense matrix, built entry by entry.
inline Dense dense_normalized_adjacency(const BipartiteGraph& g) {
  const size_t n = g.vertex_count();
  Dense a(n, std::vector<double>(n, 0.0));
  for (size_t s = 0; s < g.site_count(); ++s) {
    for (VertexId i : g.site_neighbors(s)) {
      size_t v = g.site_count() + i;
      double w = 1.0 / std::sqrt(double(g.degree(VertexId(s))) * double(g.degree(VertexId(v))));
      a[s][v] = w;
      a[v][s] = w;
    }
  }
  return a;
}

inline ScoreMatrix dense_multiply(const Dense& a, const ScoreMatrix& f) {
  ScoreMatrix out(f.size());
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < a.size(); ++j) {
      out[i].adult += a[i][j] * f[j].adult;
      out[i].decent += a[i][j] * f[j].decent;
    }
  }
  return out;
}

/// Gauss-Jordan with partial pivoting on (I - alpha*A) X = (1 - alpha) Y.
inline ScoreMatrix gauss_solve(const BipartiteGraph& g, const ScoreMatrix& y, double alpha) {
  const size_t n = g.vertex_count();
  Dense a = dense_normalized_adjacency(g);
  Dense m(n, std::vector<double>(n + 2, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) m[i][j] = (i == j ? 1.0 : 0.0) - alpha * a[i][j];
    m[i][n] = (1.0 - alpha) * y[i].adult;
    m[i][n + 1] = (1.0 - alpha) * y[i].decent;
  }
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    for (size_t r = c + 1; r < n; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    }
    std::swap(m[c], m[piv]);
    for (size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0.0) continue;
      double factor = m[r][c] / m[c][c];
      for (size_t k = c; k < n + 2; ++k) m[r][k] -= factor * m[c][k];
    }
  }
  ScoreMatrix out(n);
  for (size_t i = 0; i < n; ++i) out[i] = {m[i][n] / m[i][i], m[i][n + 1] / m[i][i]};
  return out;
}

inline double max_abs_diff(const ScoreMatrix& a, const ScoreMatrix& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    m = std::max({m, std::abs(a[i].adult - b[i].adult), std::abs(a[i].decent - b[i].decent)});
  }
  return m;
}

/// Graph from literal (site, image) pairs.
inline BipartiteGraph graph_of(std::initializer_list<std::pair<const char*, const char*>> edges) {
  GraphBuilder b;
  for (auto [s, i] : edges) b.add_edge(s, i);
  return b.build();
}

}  // namespace linkprop::testing

#endif  // LINKPROP_TESTS_TEST_UTIL_HPP_
