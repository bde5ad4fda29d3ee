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

#ifndef LINKPROP_CLOSED_FORM_HPP_
#define LINKPROP_CLOSED_FORM_HPP_

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "linkprop/error.hpp"
#include "linkprop/graph.hpp"
#include "linkprop/labels.hpp"

namespace linkprop {

/// Largest graph the dense solver accepts.
inline constexpr size_t kDenseSolverCap = 2000;

/// Solves (I - alpha*A) F = (1 - alpha) Y by dense factorization.
///
/// This is the analytical fixed point of propagate() and exists to check it;
/// it is O(V^3) and refuses graphs above `cap` vertices. I - alpha*A is
/// symmetric positive definite for alpha < 1, so LLT suffices.
inline ScoreMatrix closed_form_solve(const BipartiteGraph& g, const ScoreMatrix& y,
                                     double alpha, size_t cap = kDenseSolverCap) {
  const size_t n = g.vertex_count();
  if (n > cap) {
    throw validation_error("dense solver refused: " + std::to_string(n) +
                           " vertices exceeds cap " + std::to_string(cap));
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw validation_error("alpha must lie in (0, 1)");
  if (y.size() != n) throw validation_error("seed matrix does not match graph");

  const auto sites = static_cast<Eigen::Index>(g.site_count());
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index s = 0; s < sites; ++s) {
    for (VertexId i : g.site_neighbors(s)) {
      const Eigen::Index v = sites + i;
      const double w = alpha / std::sqrt(static_cast<double>(g.degree(s)) *
                                         static_cast<double>(g.degree(v)));
      m(s, v) -= w;
      m(v, s) -= w;
    }
  }
  Eigen::MatrixXd rhs(n, 2);
  for (size_t v = 0; v < n; ++v) {
    rhs(v, 0) = (1.0 - alpha) * y[v].adult;
    rhs(v, 1) = (1.0 - alpha) * y[v].decent;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw numeric_error("dense factorization failed");
  Eigen::MatrixXd x = llt.solve(rhs);

  ScoreMatrix out(n);
  for (size_t v = 0; v < n; ++v) out[v] = {x(v, 0), x(v, 1)};
  return out;
}

inline ScoreMatrix closed_form_solve(const BipartiteGraph& g, const SeedLabels& y,
                                     double alpha, size_t cap = kDenseSolverCap) {
  return closed_form_solve(g, y.to_matrix(), alpha, cap);
}

}  // namespace linkprop

#endif  // LINKPROP_CLOSED_FORM_HPP_
