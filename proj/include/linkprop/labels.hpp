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

#ifndef LINKPROP_LABELS_HPP_
#define LINKPROP_LABELS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "linkprop/error.hpp"
#include "linkprop/graph.hpp"
#include "linkprop/ingest.hpp"
#include "linkprop/site_key.hpp"

namespace linkprop {

/// One row of a two-column score matrix.
struct Score {
  double adult = 0.0;
  double decent = 0.0;

  friend bool operator==(const Score&, const Score&) = default;
};

/// Per-vertex (adultness, decentness) pairs, indexed like the graph.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  explicit ScoreMatrix(size_t rows) : rows_(rows) {}
  ScoreMatrix(std::initializer_list<Score> rows) : rows_(rows) {}

  size_t size() const { return rows_.size(); }
  Score& operator[](size_t i) { return rows_[i]; }
  const Score& operator[](size_t i) const { return rows_[i]; }
  auto begin() const { return rows_.begin(); }
  auto end() const { return rows_.end(); }
  auto begin() { return rows_.begin(); }
  auto end() { return rows_.end(); }

  double max_abs() const {
    double m = 0.0;
    for (const auto& r : rows_) m = std::max({m, std::abs(r.adult), std::abs(r.decent)});
    return m;
  }

  friend bool operator==(const ScoreMatrix&, const ScoreMatrix&) = default;

 private:
  std::vector<Score> rows_;
};

enum class SeedLabel : uint8_t { kUnlabeled, kAdult, kDecent };

enum class Label : uint8_t { kDecent, kAdult };

inline std::string_view to_string(Label l) {
  return l == Label::kAdult ? "adult" : "decent";
}

inline Label parse_label(std::string_view s) {
  if (s == "adult" || s == "1") return Label::kAdult;
  if (s == "decent" || s == "0") return Label::kDecent;
  throw validation_error("unknown label '" + std::string(s) +
                         "' (expected adult or decent)");
}

/// Initial label indicators: adult (1,0), decent (0,1), unlabeled (0,0).
class SeedLabels {
 public:
  SeedLabels() = default;
  explicit SeedLabels(size_t vertices) : labels_(vertices, SeedLabel::kUnlabeled) {}

  size_t size() const { return labels_.size(); }
  SeedLabel operator[](size_t v) const { return labels_[v]; }
  void set(size_t v, SeedLabel label) { labels_.at(v) = label; }

  Score row(size_t v) const {
    switch (labels_[v]) {
      case SeedLabel::kAdult: return {1.0, 0.0};
      case SeedLabel::kDecent: return {0.0, 1.0};
      default: return {0.0, 0.0};
    }
  }

  ScoreMatrix to_matrix() const {
    ScoreMatrix m(labels_.size());
    for (size_t v = 0; v < labels_.size(); ++v) m[v] = row(v);
    return m;
  }

 private:
  std::vector<SeedLabel> labels_;
};

struct SeedFileStats {
  uint64_t entries = 0;
  uint64_t matched = 0;
  uint64_t unknown_sites = 0;
  uint64_t conflicts = 0;
};

/// Reads `site_url<TAB>adult|decent` lines and attaches them to the graph's
/// site vertices. Site URLs are normalized with the same hosting
/// exceptions used at ingestion. When several entries collapse onto one
/// site and disagree, adult wins.
inline SeedLabels read_seed_labels(std::istream& in, const BipartiteGraph& g,
                                   const HostingExceptions& exceptions,
                                   SeedFileStats* stats = nullptr,
                                   std::string_view source = "seeds") {
  SeedLabels seeds(g.vertex_count());
  SeedFileStats local;
  std::string line;
  uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto where = [&] { return std::string(source) + ":" + std::to_string(line_no) + ": "; };
    auto fields = detail::split_tabs(detail::chomp(line));
    if (fields.size() != 2) throw validation_error(where() + "expected site<TAB>label");
    std::string site;
    Label label;
    try {
      site = normalize_site_url(fields[0], exceptions);
      label = parse_label(detail::trim(fields[1]));
    } catch (const Error& e) {
      throw validation_error(where() + e.what());
    }
    ++local.entries;
    auto v = g.find_site(site);
    if (!v) {
      ++local.unknown_sites;
      continue;
    }
    ++local.matched;
    SeedLabel incoming = label == Label::kAdult ? SeedLabel::kAdult : SeedLabel::kDecent;
    SeedLabel current = seeds[*v];
    if (current != SeedLabel::kUnlabeled && current != incoming) ++local.conflicts;
    if (current != SeedLabel::kAdult) seeds.set(*v, incoming);
  }
  if (stats) *stats = local;
  return seeds;
}

}  // namespace linkprop

#endif  // LINKPROP_LABELS_HPP_
