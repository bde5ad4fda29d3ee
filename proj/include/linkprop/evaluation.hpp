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

#ifndef LINKPROP_EVALUATION_HPP_
#define LINKPROP_EVALUATION_HPP_

#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "linkprop/classifier.hpp"
#include "linkprop/error.hpp"
#include "linkprop/graph.hpp"
#include "linkprop/ingest.hpp"
#include "linkprop/labels.hpp"
#include "linkprop/propagation.hpp"

namespace linkprop {

/// k values swept by default.
inline const std::vector<double> kDefaultKGrid = {0.01, 0.02, 0.03, 0.04,
                                                  0.06, 0.08, 0.10, 0.12};

/// Manually assigned labels, keyed by raw image key.
class GroundTruth {
 public:
  GroundTruth() = default;
  GroundTruth(std::initializer_list<std::pair<const std::string, Label>> init)
      : labels_(init) {}

  void add(std::string key, Label label) {
    auto [it, inserted] = labels_.try_emplace(std::move(key), label);
    if (!inserted && it->second != label) {
      throw validation_error("ground truth lists '" + it->first + "' twice with different labels");
    }
  }

  size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  size_t positives() const {
    size_t n = 0;
    for (const auto& [k, l] : labels_) n += l == Label::kAdult;
    return n;
  }
  auto begin() const { return labels_.begin(); }
  auto end() const { return labels_.end(); }

 private:
  std::map<std::string, Label> labels_;
};

/// `image_key<TAB>adult|decent` per line.
inline GroundTruth read_ground_truth(std::istream& in, std::string_view source = "truth") {
  GroundTruth truth;
  std::string line;
  uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto fields = detail::split_tabs(detail::chomp(line));
    try {
      if (fields.size() != 2 || detail::trim(fields[0]).empty()) {
        throw validation_error("expected image_key<TAB>label");
      }
      truth.add(std::string(detail::trim(fields[0])), parse_label(detail::trim(fields[1])));
    } catch (const Error& e) {
      throw validation_error(std::string(source) + ":" + std::to_string(line_no) + ": " +
                             e.what());
    }
  }
  if (truth.empty()) throw validation_error(std::string(source) + ": ground truth is empty");
  return truth;
}

struct Confusion {
  uint64_t true_positives = 0;
  uint64_t false_positives = 0;
  uint64_t false_negatives = 0;
  uint64_t true_negatives = 0;

  uint64_t total() const {
    return true_positives + false_positives + false_negatives + true_negatives;
  }

  /// Absent when nothing was predicted adult.
  std::optional<double> precision() const {
    uint64_t predicted = true_positives + false_positives;
    if (predicted == 0) return std::nullopt;
    return static_cast<double>(true_positives) / static_cast<double>(predicted);
  }

  /// Absent when the truth has no adult entries.
  std::optional<double> recall() const {
    uint64_t actual = true_positives + false_negatives;
    if (actual == 0) return std::nullopt;
    return static_cast<double>(true_positives) / static_cast<double>(actual);
  }

  friend bool operator==(const Confusion&, const Confusion&) = default;
};

struct CurvePoint {
  double k = 0.0;
  size_t adult_verdicts = 0;
  Confusion counts;

  std::optional<double> precision() const { return counts.precision(); }
  std::optional<double> recall() const { return counts.recall(); }
};

struct EvalReport {
  Confusion counts;
  std::optional<double> precision;
  std::optional<double> recall;
  std::vector<CurvePoint> curve;

  static EvalReport from(const Confusion& c) { return {c, c.precision(), c.recall(), {}}; }
};

/// Scores predictions keyed by vertex key against the truth. Truth images
/// are resolved to their cluster first; those without a prediction count
/// as classified decent. Throws when no truth image has a prediction.
inline EvalReport precision_recall(const std::unordered_map<std::string, Label>& predicted,
                                   const GroundTruth& truth,
                                   const ClusterMap& clusters = {}) {
  Confusion c;
  size_t matched = 0;
  for (const auto& [image, actual] : truth) {
    auto it = predicted.find(std::string(clusters.resolve(image)));
    Label guess = Label::kDecent;
    if (it != predicted.end()) {
      ++matched;
      guess = it->second;
    }
    if (guess == Label::kAdult) {
      ++(actual == Label::kAdult ? c.true_positives : c.false_positives);
    } else {
      ++(actual == Label::kAdult ? c.false_negatives : c.true_negatives);
    }
  }
  if (matched == 0) {
    throw validation_error("no ground-truth image appears among the verdicts");
  }
  return EvalReport::from(c);
}

inline EvalReport precision_recall(const BipartiteGraph& g, std::span<const Verdict> verdicts,
                                   const GroundTruth& truth,
                                   const ClusterMap& clusters = {}) {
  std::unordered_map<std::string, Label> predicted;
  predicted.reserve(verdicts.size());
  for (const auto& v : verdicts) predicted.emplace(g.vertex_key(v.vertex), v.label);
  return precision_recall(predicted, truth, clusters);
}

namespace detail {

// Truth counts laid out along a ranking, for cutting at many depths.
struct RankedTally {
  std::vector<uint64_t> adult_prefix;   // adult truth among ranks [0, r)
  std::vector<uint64_t> decent_prefix;  // decent truth among ranks [0, r)
  uint64_t adult_total = 0;
  uint64_t decent_total = 0;

  Confusion at(size_t cut) const {
    Confusion c;
    c.true_positives = adult_prefix[cut];
    c.false_positives = decent_prefix[cut];
    c.false_negatives = adult_total - c.true_positives;
    c.true_negatives = decent_total - c.false_positives;
    return c;
  }
};

inline RankedTally tally_ranking(const BipartiteGraph& g,
                                 std::span<const RankedVertex> ranked,
                                 const GroundTruth& truth, const ClusterMap& clusters) {
  std::vector<int64_t> position(g.vertex_count(), -1);
  for (size_t r = 0; r < ranked.size(); ++r) position[ranked[r].vertex] = static_cast<int64_t>(r);

  std::vector<uint64_t> adult(ranked.size(), 0), decent(ranked.size(), 0);
  RankedTally t;
  size_t matched = 0;
  for (const auto& [image, actual] : truth) {
    (actual == Label::kAdult ? t.adult_total : t.decent_total) += 1;
    auto v = g.find_image(clusters.resolve(image));
    if (!v || position[*v] < 0) continue;
    ++matched;
    (actual == Label::kAdult ? adult : decent)[static_cast<size_t>(position[*v])] += 1;
  }
  if (matched == 0) {
    throw validation_error("no ground-truth image appears among the verdicts");
  }
  t.adult_prefix.assign(ranked.size() + 1, 0);
  t.decent_prefix.assign(ranked.size() + 1, 0);
  for (size_t r = 0; r < ranked.size(); ++r) {
    t.adult_prefix[r + 1] = t.adult_prefix[r] + adult[r];
    t.decent_prefix[r + 1] = t.decent_prefix[r] + decent[r];
  }
  return t;
}

}  // namespace detail

/// One (k, precision, recall) point per grid value from a single ranking.
inline std::vector<CurvePoint> pr_sweep(const BipartiteGraph& g, const ScoreMatrix& f,
                                        Population population, const GroundTruth& truth,
                                        std::span<const double> k_grid, double epsilon,
                                        const ClusterMap& clusters = {}) {
  auto members = population_vertices(g, population);
  auto ranked = rank(f, members, epsilon);
  auto tally = detail::tally_ranking(g, ranked, truth, clusters);
  std::vector<CurvePoint> curve;
  curve.reserve(k_grid.size());
  for (double k : k_grid) {
    if (!(k > 0.0 && k < 1.0)) throw validation_error("k grid values must lie in (0, 1)");
    size_t cut = adult_count(ranked.size(), k);
    curve.push_back({k, cut, tally.at(cut)});
  }
  return curve;
}

/// Every cut depth 1..N of the ranking, with k reported as depth / N.
inline std::vector<CurvePoint> pr_curve_all_cuts(const BipartiteGraph& g, const ScoreMatrix& f,
                                                 Population population,
                                                 const GroundTruth& truth, double epsilon,
                                                 const ClusterMap& clusters = {}) {
  auto members = population_vertices(g, population);
  auto ranked = rank(f, members, epsilon);
  auto tally = detail::tally_ranking(g, ranked, truth, clusters);
  std::vector<CurvePoint> curve;
  curve.reserve(ranked.size());
  const double n = static_cast<double>(ranked.size());
  for (size_t cut = 1; cut <= ranked.size(); ++cut) {
    curve.push_back({static_cast<double>(cut) / n, cut, tally.at(cut)});
  }
  return curve;
}

struct BaselineComparison {
  EvalReport baseline;
  CurvePoint propagation;
  double recall_delta = 0.0;          // propagation minus baseline
  std::optional<double> recall_gain;  // recall_delta / baseline recall
};

/// 0.01, 0.02, ..., 0.99: candidate operating points when matching the
/// baseline, whose adult fraction can be anywhere in (0, 1).
inline std::vector<double> uniform_k_grid(int steps = 100) {
  std::vector<double> grid;
  for (int i = 1; i < steps; ++i) grid.push_back(static_cast<double>(i) / steps);
  return grid;
}

struct CompareOptions {
  Population population = Population::kImages;
  ClusterMap clusters;
  // Candidate operating points for matching the baseline's precision.
  // Empty means every cut depth of the ranking.
  std::vector<double> k_grid = uniform_k_grid();
};

/// Index of the curve point whose precision is closest to `target`,
/// preferring points at or above it; ties go to higher recall.
inline size_t match_precision(std::span<const CurvePoint> curve, double target) {
  std::optional<size_t> best_above, best_any;
  auto better = [&](size_t a, std::optional<size_t> b) {
    if (!b) return true;
    double da = std::abs(*curve[a].precision() - target);
    double db = std::abs(*curve[*b].precision() - target);
    if (da != db) return da < db;
    return curve[a].recall().value_or(0.0) > curve[*b].recall().value_or(0.0);
  };
  for (size_t i = 0; i < curve.size(); ++i) {
    if (!curve[i].precision()) continue;
    if (*curve[i].precision() >= target && better(i, best_above)) best_above = i;
    if (better(i, best_any)) best_any = i;
  }
  if (best_above) return *best_above;
  if (best_any) return *best_any;
  throw validation_error("no operating point with defined precision");
}

/// Matches an existing score matrix against the naive baseline.
inline BaselineComparison compare_scores_to_baseline(const BipartiteGraph& g,
                                                     const SeedLabels& seeds,
                                                     const ScoreMatrix& scores,
                                                     const GroundTruth& truth, double epsilon,
                                                     const CompareOptions& options = {}) {
  if (truth.empty()) throw validation_error("ground truth is empty");
  BaselineComparison out;
  out.baseline = precision_recall(g, baseline_classify(g, seeds), truth, options.clusters);
  if (!out.baseline.recall) {
    throw validation_error("ground truth has no adult images; recall is undefined");
  }
  if (!out.baseline.precision) {
    throw validation_error("baseline labels no image adult; matched precision is undefined");
  }
  auto curve = options.k_grid.empty()
                   ? pr_curve_all_cuts(g, scores, options.population, truth, epsilon,
                                       options.clusters)
                   : pr_sweep(g, scores, options.population, truth, options.k_grid, epsilon,
                              options.clusters);
  out.propagation = curve[match_precision(curve, *out.baseline.precision)];
  out.recall_delta = out.propagation.recall().value_or(0.0) - *out.baseline.recall;
  if (*out.baseline.recall > 0.0) out.recall_gain = out.recall_delta / *out.baseline.recall;
  return out;
}

/// Runs the naive baseline and the propagation pipeline on the same truth
/// and reports propagation at the baseline's precision.
inline BaselineComparison compare_to_baseline(const BipartiteGraph& g, const SeedLabels& seeds,
                                              const GroundTruth& truth,
                                              const PropagationConfig& cfg,
                                              const CompareOptions& options = {}) {
  if (truth.empty()) throw validation_error("ground truth is empty");
  auto scores = propagate(g, seeds, cfg).scores;
  return compare_scores_to_baseline(g, seeds, scores, truth, cfg.epsilon, options);
}

}  // namespace linkprop

#endif  // LINKPROP_EVALUATION_HPP_
