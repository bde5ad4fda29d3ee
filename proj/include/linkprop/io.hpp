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

#ifndef LINKPROP_IO_HPP_
#define LINKPROP_IO_HPP_

#include <charconv>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linkprop/classifier.hpp"
#include "linkprop/error.hpp"
#include "linkprop/evaluation.hpp"
#include "linkprop/graph.hpp"
#include "linkprop/ingest.hpp"
#include "linkprop/labels.hpp"
#include "linkprop/propagation.hpp"

namespace linkprop {

inline constexpr std::string_view kSnapshotMagic = "LINKPROP-GRAPH";
inline constexpr int kSnapshotVersion = 1;

/// Shortest text that always reads back to the same double.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

/// Shortest round-trip form, for parameters such as k and alpha.
inline std::string format_param(double x) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return ec == std::errc() ? std::string(buf, ptr) : format_double(x);
}

inline std::string format_optional(const std::optional<double>& x) {
  return x ? format_double(*x) : std::string("NA");
}

namespace detail {

inline double parse_double(std::string_view s) {
  s = trim(s);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw validation_error("not a number: '" + std::string(s) + "'");
  }
  return value;
}

inline uint64_t parse_count(std::string_view s) {
  s = trim(s);
  uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw validation_error("not a count: '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace detail

// Snapshot layout, one item per line:
//   LINKPROP-GRAPH<TAB>1
//   <sites><TAB><images><TAB><edges>
//   site keys, one per line, sorted
//   image keys, one per line, sorted
//   one line per site: <degree>[<TAB><image index>]...
inline void write_snapshot(std::ostream& os, const BipartiteGraph& g) {
  os << kSnapshotMagic << '\t' << kSnapshotVersion << '\n'
     << g.site_count() << '\t' << g.image_count() << '\t' << g.edge_count() << '\n';
  for (const auto& k : g.site_keys()) os << k << '\n';
  for (const auto& k : g.image_keys()) os << k << '\n';
  for (size_t s = 0; s < g.site_count(); ++s) {
    auto row = g.site_neighbors(s);
    os << row.size();
    for (VertexId i : row) os << '\t' << i;
    os << '\n';
  }
}

inline BipartiteGraph read_snapshot(std::istream& in, std::string_view source = "snapshot") {
  std::string line;
  uint64_t line_no = 0;
  auto fail = [&](const std::string& why) {
    return validation_error(std::string(source) + ":" + std::to_string(line_no) + ": " + why);
  };
  auto next = [&]() -> std::string& {
    if (!std::getline(in, line)) throw fail("unexpected end of snapshot");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };

  auto header = detail::split_tabs(next());
  if (header.size() != 2 || header[0] != kSnapshotMagic) throw fail("not a graph snapshot");
  if (header[1] != std::to_string(kSnapshotVersion)) {
    throw fail("unsupported snapshot version '" + std::string(header[1]) + "'");
  }
  auto counts = detail::split_tabs(next());
  if (counts.size() != 3) throw fail("expected sites<TAB>images<TAB>edges");
  uint64_t sites, images, edges;
  try {
    sites = detail::parse_count(counts[0]);
    images = detail::parse_count(counts[1]);
    edges = detail::parse_count(counts[2]);
  } catch (const Error& e) {
    throw fail(e.what());
  }

  GraphBuilder builder;
  std::string previous;
  for (uint64_t s = 0; s < sites; ++s) {
    const std::string& key = next();
    if (s > 0 && !(previous < key)) throw fail("site keys not sorted and unique");
    builder.add_site(key);
    previous = key;
  }
  for (uint64_t i = 0; i < images; ++i) {
    const std::string& key = next();
    if (i > 0 && !(previous < key)) throw fail("image keys not sorted and unique");
    builder.add_image(key);
    previous = key;
  }
  uint64_t seen = 0;
  for (uint64_t s = 0; s < sites; ++s) {
    auto fields = detail::split_tabs(next());
    try {
      uint64_t degree = detail::parse_count(fields[0]);
      if (fields.size() != degree + 1) throw validation_error("degree does not match row");
      for (size_t j = 1; j < fields.size(); ++j) {
        uint64_t img = detail::parse_count(fields[j]);
        if (img >= images) throw validation_error("image index out of range");
        builder.add_edge(static_cast<VertexId>(s), static_cast<VertexId>(img));
      }
      seen += degree;
    } catch (const Error& e) {
      throw fail(e.what());
    }
  }
  if (seen != edges) throw fail("edge count does not match header");
  BipartiteGraph g = builder.build();
  if (builder.duplicates_collapsed() != 0) throw fail("duplicate edges in snapshot");
  g.check_invariants();
  return g;
}

/// `vertex_kind<TAB>vertex_key<TAB>F1<TAB>F2`, in vertex index order.
inline void write_scores(std::ostream& os, const BipartiteGraph& g, const ScoreMatrix& f) {
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    os << to_string(g.kind(v)) << '\t' << g.vertex_key(v) << '\t'
       << format_double(f[v].adult) << '\t' << format_double(f[v].decent) << '\n';
  }
}

/// Reads a score file written for `g`; every vertex must appear once.
inline ScoreMatrix read_scores(std::istream& in, const BipartiteGraph& g,
                               std::string_view source = "scores") {
  ScoreMatrix f(g.vertex_count());
  std::vector<bool> seen(g.vertex_count(), false);
  std::string line;
  uint64_t line_no = 0;
  size_t count = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    try {
      auto fields = detail::split_tabs(detail::chomp(line));
      if (fields.size() != 4) throw validation_error("expected kind<TAB>key<TAB>F1<TAB>F2");
      std::optional<VertexId> v;
      if (fields[0] == "site") {
        v = g.find_site(fields[1]);
      } else if (fields[0] == "image") {
        v = g.find_image(fields[1]);
      } else {
        throw validation_error("unknown vertex kind '" + std::string(fields[0]) + "'");
      }
      if (!v) throw validation_error("vertex '" + std::string(fields[1]) + "' not in graph");
      if (seen[*v]) throw validation_error("vertex listed twice");
      seen[*v] = true;
      f[*v] = {detail::parse_double(fields[2]), detail::parse_double(fields[3])};
      ++count;
    } catch (const Error& e) {
      throw validation_error(std::string(source) + ":" + std::to_string(line_no) + ": " +
                             e.what());
    }
  }
  if (count != g.vertex_count()) {
    throw validation_error(std::string(source) + ": expected " +
                           std::to_string(g.vertex_count()) + " rows, found " +
                           std::to_string(count));
  }
  return f;
}

/// `iteration<TAB>update_norm[<TAB>objective]`.
inline void write_trace(std::ostream& os, const IterationTrace& trace) {
  for (const auto& step : trace.steps) {
    os << step.iteration << '\t' << format_double(step.update_norm);
    if (step.objective) os << '\t' << format_double(*step.objective);
    os << '\n';
  }
}

/// `vertex_key<TAB>label<TAB>ratio<TAB>rank`, sorted by rank.
inline void write_verdicts(std::ostream& os, const BipartiteGraph& g,
                           std::span<const RankedVertex> ranked,
                           std::span<const Verdict> verdicts) {
  for (size_t r = 0; r < ranked.size(); ++r) {
    os << g.vertex_key(ranked[r].vertex) << '\t' << to_string(verdicts[r].label) << '\t'
       << format_double(ranked[r].ratio) << '\t' << ranked[r].rank << '\n';
  }
}

/// `k<TAB>precision<TAB>recall`; undefined values print as NA.
inline void write_curve(std::ostream& os, std::span<const CurvePoint> curve) {
  os << "k\tprecision\trecall\n";
  for (const auto& p : curve) {
    os << format_param(p.k) << '\t' << format_optional(p.precision()) << '\t'
       << format_optional(p.recall()) << '\n';
  }
}

inline void write_report(std::ostream& os, std::string_view prefix, const EvalReport& r) {
  os << prefix << "true_positives\t" << r.counts.true_positives << '\n'
     << prefix << "false_positives\t" << r.counts.false_positives << '\n'
     << prefix << "false_negatives\t" << r.counts.false_negatives << '\n'
     << prefix << "true_negatives\t" << r.counts.true_negatives << '\n'
     << prefix << "precision\t" << format_optional(r.precision) << '\n'
     << prefix << "recall\t" << format_optional(r.recall) << '\n';
}

}  // namespace linkprop

#endif  // LINKPROP_IO_HPP_
