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

#ifndef LINKPROP_INGEST_HPP_
#define LINKPROP_INGEST_HPP_

#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "linkprop/error.hpp"
#include "linkprop/graph.hpp"
#include "linkprop/site_key.hpp"

namespace linkprop {

/// Pixel area below which an image is considered decoration (100 x 50).
inline constexpr uint64_t kDefaultMinImageArea = 100 * 50;

struct ImageMeta {
  std::optional<uint32_t> width;
  std::optional<uint32_t> height;

  std::optional<uint64_t> area() const {
    if (!width || !height) return std::nullopt;
    return uint64_t{*width} * uint64_t{*height};
  }
};

struct EdgeRecord {
  std::string site_url;
  std::string image_key;
  ImageMeta meta;
};

/// Image key -> visual-similarity cluster id. Unmapped images are their own
/// cluster.
class ClusterMap {
 public:
  ClusterMap() = default;
  ClusterMap(std::initializer_list<std::pair<const std::string, std::string>> init)
      : map_(init) {}

  void assign(std::string image, std::string cluster) {
    auto [it, inserted] = map_.try_emplace(std::move(image), cluster);
    if (!inserted && it->second != cluster) {
      throw validation_error("image '" + it->first +
                             "' mapped to two clusters: '" + it->second +
                             "' and '" + cluster + "'");
    }
  }

  std::string_view resolve(std::string_view image) const {
    auto it = map_.find(std::string(image));
    return it == map_.end() ? image : std::string_view(it->second);
  }

  size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }

 private:
  std::unordered_map<std::string, std::string> map_;
};

struct IngestOptions {
  HostingExceptions exceptions;
  ClusterMap clusters;
  uint64_t min_area = kDefaultMinImageArea;
};

struct MalformedLine {
  uint64_t line = 0;
  std::string reason;
};

/// Counters reported after every ingestion run.
struct IngestSummary {
  uint64_t lines_read = 0;
  uint64_t comment_lines = 0;
  uint64_t blank_lines = 0;
  uint64_t records_accepted = 0;
  uint64_t records_malformed = 0;
  uint64_t records_small_image = 0;
  uint64_t small_images = 0;
  uint64_t duplicate_edges = 0;
  uint64_t imageless_sites_dropped = 0;
  uint64_t sites = 0;
  uint64_t images = 0;
  uint64_t edges = 0;
  std::vector<MalformedLine> malformed_examples;  // first few only

  static constexpr size_t kMaxExamples = 10;

  void write(std::ostream& os) const {
    os << "lines_read\t" << lines_read << '\n'
       << "comment_lines\t" << comment_lines << '\n'
       << "blank_lines\t" << blank_lines << '\n'
       << "records_accepted\t" << records_accepted << '\n'
       << "records_malformed\t" << records_malformed << '\n'
       << "records_small_image\t" << records_small_image << '\n'
       << "small_images\t" << small_images << '\n'
       << "duplicate_edges\t" << duplicate_edges << '\n'
       << "imageless_sites_dropped\t" << imageless_sites_dropped << '\n'
       << "sites\t" << sites << '\n'
       << "images\t" << images << '\n'
       << "edges\t" << edges << '\n';
    for (const auto& m : malformed_examples) {
      os << "malformed_line\t" << m.line << '\t' << m.reason << '\n';
    }
  }
};

namespace detail {

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

inline std::optional<uint32_t> parse_dimension(std::string_view s) {
  s = trim(s);
  uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return value;
}

inline std::string_view chomp(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace detail

/// Parses one edge-file line: `site_url<TAB>image_key[<TAB>width<TAB>height]`.
inline EdgeRecord parse_edge_line(std::string_view line) {
  auto fields = detail::split_tabs(detail::chomp(line));
  if (fields.size() != 2 && fields.size() != 4) {
    throw RejectedRecord(std::string(line), "expected 2 or 4 tab-separated fields");
  }
  EdgeRecord rec;
  rec.site_url = std::string(detail::trim(fields[0]));
  rec.image_key = std::string(detail::trim(fields[1]));
  if (rec.site_url.empty() || rec.image_key.empty()) {
    throw RejectedRecord(std::string(line), "empty site or image field");
  }
  if (fields.size() == 4) {
    rec.meta.width = detail::parse_dimension(fields[2]);
    rec.meta.height = detail::parse_dimension(fields[3]);
    if (!rec.meta.width || !rec.meta.height) {
      throw RejectedRecord(std::string(line), "width/height must be nonnegative integers");
    }
  }
  return rec;
}

/// Streaming edge ingestion. Records may arrive in any order and repeat;
/// finish() applies the small-image filter and cluster map, collapses
/// duplicate pairs and returns the canonical graph.
class EdgeIngestor {
 public:
  explicit EdgeIngestor(IngestOptions options) : options_(std::move(options)) {}

  void add(const EdgeRecord& rec) {
    std::string site;
    try {
      site = normalize_site_url(rec.site_url, options_.exceptions);
    } catch (const RejectedRecord& e) {
      note_malformed(e.what());
      return;
    }
    if (rec.image_key.empty()) {
      note_malformed("empty image key");
      return;
    }
    VertexId s = intern(site_ids_, site_keys_, site);
    VertexId img = intern(image_ids_, image_keys_, rec.image_key);
    if (img == small_.size()) small_.push_back(false);
    if (auto area = rec.meta.area(); area && *area < options_.min_area) {
      small_[img] = true;
    }
    records_.emplace_back(s, img);
    ++summary_.records_accepted;
  }

  /// Feeds one raw line of an edge file; comments and blanks are counted
  /// and ignored, malformed lines are counted and skipped.
  void add_line(std::string_view line) {
    ++summary_.lines_read;
    std::string_view body = detail::trim(line);
    if (body.empty()) {
      ++summary_.blank_lines;
      return;
    }
    if (body.front() == '#') {
      ++summary_.comment_lines;
      return;
    }
    try {
      add(parse_edge_line(line));
    } catch (const RejectedRecord& e) {
      note_malformed(e.what());
    }
  }

  void add_stream(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) add_line(line);
  }

  BipartiteGraph finish() {
    GraphBuilder builder;
    for (const auto& key : site_keys_) builder.add_site(key);
    std::vector<std::optional<VertexId>> cluster_of(image_keys_.size());
    for (size_t i = 0; i < image_keys_.size(); ++i) {
      if (small_[i]) {
        ++summary_.small_images;
        continue;
      }
      cluster_of[i] = builder.add_image(options_.clusters.resolve(image_keys_[i]));
    }
    for (const auto& [s, img] : records_) {
      if (!cluster_of[img]) {
        ++summary_.records_small_image;
        continue;
      }
      builder.add_edge(s, *cluster_of[img]);
    }
    records_.clear();
    records_.shrink_to_fit();
    BipartiteGraph g = builder.build();
    summary_.duplicate_edges = builder.duplicates_collapsed();
    summary_.sites = g.site_count();
    summary_.images = g.image_count();
    summary_.edges = g.edge_count();
    return g;
  }

  const IngestSummary& summary() const { return summary_; }
  IngestSummary& summary() { return summary_; }

 private:
  static VertexId intern(std::unordered_map<std::string, VertexId>& ids,
                         std::vector<std::string>& keys, const std::string& key) {
    auto [it, inserted] = ids.try_emplace(key, static_cast<VertexId>(keys.size()));
    if (inserted) keys.push_back(key);
    return it->second;
  }

  void note_malformed(std::string reason) {
    ++summary_.records_malformed;
    if (summary_.malformed_examples.size() < IngestSummary::kMaxExamples) {
      summary_.malformed_examples.push_back({summary_.lines_read, std::move(reason)});
    }
  }

  IngestOptions options_;
  IngestSummary summary_;
  std::unordered_map<std::string, VertexId> site_ids_;
  std::unordered_map<std::string, VertexId> image_ids_;
  std::vector<std::string> site_keys_;
  std::vector<std::string> image_keys_;
  std::vector<bool> small_;
  std::vector<std::pair<VertexId, VertexId>> records_;
};

struct IngestResult {
  BipartiteGraph graph;
  IngestSummary summary;
};

inline IngestResult ingest_edges(std::span<const EdgeRecord> records,
                                 IngestOptions options = {}) {
  EdgeIngestor ingestor(std::move(options));
  for (const auto& rec : records) ingestor.add(rec);
  BipartiteGraph g = ingestor.finish();
  g.check_invariants();
  return {std::move(g), ingestor.summary()};
}

/// Reads an edge file stream. Malformed lines never abort ingestion.
inline IngestResult ingest_edge_stream(std::istream& in, IngestOptions options = {}) {
  EdgeIngestor ingestor(std::move(options));
  ingestor.add_stream(in);
  BipartiteGraph g = ingestor.finish();
  g.check_invariants();
  return {std::move(g), ingestor.summary()};
}

/// `image_key<TAB>cluster_id` per line; malformed lines are fatal.
inline ClusterMap read_cluster_map(std::istream& in, std::string_view source = "cluster map") {
  ClusterMap map;
  std::string line;
  uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto fields = detail::split_tabs(detail::chomp(line));
    if (fields.size() != 2 || detail::trim(fields[0]).empty() ||
        detail::trim(fields[1]).empty()) {
      throw validation_error(std::string(source) + ":" + std::to_string(line_no) +
                             ": expected image_key<TAB>cluster_id");
    }
    map.assign(std::string(detail::trim(fields[0])), std::string(detail::trim(fields[1])));
  }
  return map;
}

/// One second-level domain per line.
inline HostingExceptions read_hosting_exceptions(std::istream& in,
                                                 std::string_view source = "exceptions") {
  HostingExceptions ex;
  std::string line;
  uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    try {
      ex.add(body);
    } catch (const Error& e) {
      throw validation_error(std::string(source) + ":" + std::to_string(line_no) +
                             ": " + e.what());
    }
  }
  return ex;
}

}  // namespace linkprop

#endif  // LINKPROP_INGEST_HPP_
