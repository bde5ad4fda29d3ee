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

#ifndef LINKPROP_PROPAGATION_HPP_
#define LINKPROP_PROPAGATION_HPP_

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linkprop/error.hpp"
#include "linkprop/graph.hpp"
#include "linkprop/labels.hpp"

namespace linkprop {

/// Parameters of the propagation and the ranking that follows it.
///
/// alpha is the mixing weight of the propagated term; the seed-fidelity
/// weight of the objective is derived from it as (1 - alpha) / alpha.
struct PropagationConfig {
  double alpha = 0.5;
  size_t iterations = 5;
  // Stop early once the update norm drops to this value. Off by default so
  // fixed-count runs are bit-reproducible.
  std::optional<double> residual_tolerance;
  double epsilon = 0.001;
  double k = 0.04;
  bool trace_objective = false;

  double mu() const { return (1.0 - alpha) / alpha; }

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
      throw validation_error("alpha must lie in (0, 1), got " + std::to_string(alpha));
    }
    if (iterations < 1) throw validation_error("iterations must be at least 1");
    if (residual_tolerance && !(*residual_tolerance >= 0.0)) {
      throw validation_error("residual tolerance must be nonnegative");
    }
    if (!(epsilon > 0.0)) throw validation_error("epsilon must be positive");
    if (!(k > 0.0 && k < 1.0)) {
      throw validation_error("k must lie in (0, 1), got " + std::to_string(k));
    }
  }
};

struct IterationStep {
  size_t iteration = 0;  // 1-based
  double update_norm = 0.0;
  std::optional<double> objective;
};

struct IterationTrace {
  std::vector<IterationStep> steps;

  size_t size() const { return steps.size(); }
};

struct PropagationResult {
  ScoreMatrix scores;
  IterationTrace trace;
};

namespace detail {

inline void check_rows(const BipartiteGraph& g, const ScoreMatrix& m, const char* what) {
  if (m.size() != g.vertex_count()) {
    throw validation_error(std::string(what) + " has " + std::to_string(m.size()) +
                           " rows but the graph has " +
                           std::to_string(g.vertex_count()) + " vertices");
  }
}

inline std::vector<double> inverse_sqrt_degrees(const BipartiteGraph& g) {
  std::vector<double> out(g.vertex_count());
  for (VertexId v = 0; v < out.size(); ++v) {
    auto d = g.degree(v);
    out[v] = d == 0 ? 0.0 : 1.0 / std::sqrt(static_cast<double>(d));
  }
  return out;
}

// out = A * in, with A = D^-1/2 W D^-1/2. `scaled` is scratch space.
// Each output row reduces over its adjacency list in stored order.
inline void multiply_normalized(const BipartiteGraph& g,
                                const std::vector<double>& inv_sqrt,
                                const ScoreMatrix& in, ScoreMatrix& scaled,
                                ScoreMatrix& out) {
  const size_t n = g.vertex_count();
  for (size_t v = 0; v < n; ++v) {
    scaled[v] = {in[v].adult * inv_sqrt[v], in[v].decent * inv_sqrt[v]};
  }
  const size_t sites = g.site_count();
  for (size_t s = 0; s < sites; ++s) {
    Score acc;
    for (VertexId i : g.site_neighbors(s)) {
      const Score& x = scaled[sites + i];
      acc.adult += x.adult;
      acc.decent += x.decent;
    }
    out[s] = {acc.adult * inv_sqrt[s], acc.decent * inv_sqrt[s]};
  }
  for (size_t i = 0; i < g.image_count(); ++i) {
    Score acc;
    for (VertexId s : g.image_neighbors(i)) {
      acc.adult += scaled[s].adult;
      acc.decent += scaled[s].decent;
    }
    const double w = inv_sqrt[sites + i];
    out[sites + i] = {acc.adult * w, acc.decent * w};
  }
}

}  // namespace detail

/// Returns A*F for the symmetric degree-normalized adjacency. Rows of
/// isolated vertices are zero.
inline ScoreMatrix apply_normalized_operator(const BipartiteGraph& g, const ScoreMatrix& f) {
  detail::check_rows(g, f, "score matrix");
  ScoreMatrix scaled(f.size()), out(f.size());
  detail::multiply_normalized(g, detail::inverse_sqrt_degrees(g), f, scaled, out);
  return out;
}

/// Regularized objective: the smoothness term summed once per edge plus
/// mu times the squared distance to the seeds, mu = (1 - alpha) / alpha.
inline double objective(const BipartiteGraph& g, const ScoreMatrix& f,
                        const ScoreMatrix& y, double alpha) {
  detail::check_rows(g, f, "score matrix");
  detail::check_rows(g, y, "seed matrix");
  if (!(alpha > 0.0 && alpha < 1.0)) throw validation_error("alpha must lie in (0, 1)");
  const double mu = (1.0 - alpha) / alpha;
  auto inv_sqrt = detail::inverse_sqrt_degrees(g);
  const size_t sites = g.site_count();
  double smooth = 0.0;
  for (size_t s = 0; s < sites; ++s) {
    for (VertexId i : g.site_neighbors(s)) {
      const size_t v = sites + i;
      double da = f[s].adult * inv_sqrt[s] - f[v].adult * inv_sqrt[v];
      double dd = f[s].decent * inv_sqrt[s] - f[v].decent * inv_sqrt[v];
      smooth += da * da + dd * dd;
    }
  }
  double fit = 0.0;
  for (size_t v = 0; v < f.size(); ++v) {
    double da = f[v].adult - y[v].adult;
    double dd = f[v].decent - y[v].decent;
    fit += da * da + dd * dd;
  }
  return smooth + mu * fit;
}

inline double objective(const BipartiteGraph& g, const ScoreMatrix& f,
                        const SeedLabels& y, double alpha) {
  return objective(g, f, y.to_matrix(), alpha);
}

/// Iterates F <- alpha*A*F + (1 - alpha)*Y from F = Y.
///
/// Runs exactly cfg.iterations updates unless a residual tolerance is set
/// and reached first. Two buffers alternate; the input is never updated in
/// place, so the result depends only on the graph, Y and cfg.
inline PropagationResult propagate(const BipartiteGraph& g, const ScoreMatrix& y,
                                   const PropagationConfig& cfg) {
  cfg.validate();
  detail::check_rows(g, y, "seed matrix");
  for (const Score& r : y) {
    if (!std::isfinite(r.adult) || !std::isfinite(r.decent) || r.adult < 0.0 ||
        r.decent < 0.0) {
      throw numeric_error("seed matrix must be finite and nonnegative");
    }
  }

  const size_t n = g.vertex_count();
  const double a = cfg.alpha;
  const double b = 1.0 - cfg.alpha;
  auto inv_sqrt = detail::inverse_sqrt_degrees(g);

  PropagationResult result;
  ScoreMatrix current = y;
  ScoreMatrix next(n), scaled(n);
  for (size_t it = 1; it <= cfg.iterations; ++it) {
    detail::multiply_normalized(g, inv_sqrt, current, scaled, next);
    double sq = 0.0;
    for (size_t v = 0; v < n; ++v) {
      Score& r = next[v];
      r.adult = a * r.adult + b * y[v].adult;
      r.decent = a * r.decent + b * y[v].decent;
      double da = r.adult - current[v].adult;
      double dd = r.decent - current[v].decent;
      sq += da * da + dd * dd;
    }
    if (!std::isfinite(sq)) {
      throw numeric_error("non-finite score at iteration " + std::to_string(it));
    }
    std::swap(current, next);

    IterationStep step{it, std::sqrt(sq), std::nullopt};
    if (cfg.trace_objective) step.objective = objective(g, current, y, cfg.alpha);
    result.trace.steps.push_back(step);
    if (cfg.residual_tolerance && step.update_norm <= *cfg.residual_tolerance) break;
  }
  result.scores = std::move(current);
  return result;
}

inline PropagationResult propagate(const BipartiteGraph& g, const SeedLabels& y,
                                   const PropagationConfig& cfg) {
  if (y.size() != g.vertex_count()) {
    throw validation_error("seed labels do not cover the graph's vertices");
  }
  return propagate(g, y.to_matrix(), cfg);
}

}  // namespace linkprop

#endif  // LINKPROP_PROPAGATION_HPP_
