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

#ifndef LINKPROP_GRAPH_HPP_
#define LINKPROP_GRAPH_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "linkprop/error.hpp"

namespace linkprop {

using VertexId = uint32_t;
using EdgeCount = uint64_t;

enum class VertexKind { kSite, kImage };

inline std::string_view to_string(VertexKind kind) {
  return kind == VertexKind::kSite ? "site" : "image";
}

/// Immutable binary site-image graph in compressed sparse form.
///
/// Vertices share one index space: sites occupy [0, site_count()) and image
/// clusters occupy [site_count(), vertex_count()). Within each partition the
/// index order is the sorted key order, so a graph is fully determined by its
/// key and edge sets. Forward rows list image-local indices, reverse rows
/// list site indices; both are sorted and duplicate-free.
class BipartiteGraph {
 public:
  BipartiteGraph() : site_offsets_(1, 0), image_offsets_(1, 0) {}

  size_t site_count() const { return site_keys_.size(); }
  size_t image_count() const { return image_keys_.size(); }
  size_t vertex_count() const { return site_count() + image_count(); }
  EdgeCount edge_count() const { return site_targets_.size(); }

  VertexId image_vertex(size_t image) const {
    return static_cast<VertexId>(site_count() + image);
  }
  bool is_site(VertexId v) const { return v < site_count(); }
  VertexKind kind(VertexId v) const {
    return is_site(v) ? VertexKind::kSite : VertexKind::kImage;
  }

  const std::vector<std::string>& site_keys() const { return site_keys_; }
  const std::vector<std::string>& image_keys() const { return image_keys_; }

  const std::string& vertex_key(VertexId v) const {
    check_vertex(v);
    return is_site(v) ? site_keys_[v] : image_keys_[v - site_count()];
  }

  /// Image-local indices adjacent to a site.
  std::span<const VertexId> site_neighbors(size_t site) const {
    return {site_targets_.data() + site_offsets_[site],
            site_targets_.data() + site_offsets_[site + 1]};
  }

  /// Site indices adjacent to an image (image-local index).
  std::span<const VertexId> image_neighbors(size_t image) const {
    return {image_targets_.data() + image_offsets_[image],
            image_targets_.data() + image_offsets_[image + 1]};
  }

  /// Number of distinct neighbors of a vertex, i.e. the diagonal of D.
  EdgeCount degree(VertexId v) const {
    check_vertex(v);
    if (is_site(v)) return site_offsets_[v + 1] - site_offsets_[v];
    size_t i = v - site_count();
    return image_offsets_[i + 1] - image_offsets_[i];
  }

  std::optional<VertexId> find_site(std::string_view key) const {
    return find_in(site_keys_, key);
  }

  /// Returns the global vertex index of an image cluster.
  std::optional<VertexId> find_image(std::string_view key) const {
    auto local = find_in(image_keys_, key);
    if (!local) return std::nullopt;
    return image_vertex(*local);
  }

  /// Verifies the structural invariants; throws on the first violation.
  void check_invariants() const {
    auto sorted_unique = [](const std::vector<std::string>& keys) {
      return std::adjacent_find(keys.begin(), keys.end(),
                                std::greater_equal<>()) == keys.end();
    };
    if (!sorted_unique(site_keys_) || !sorted_unique(image_keys_)) {
      throw validation_error("graph keys are not sorted and unique");
    }
    if (site_offsets_.size() != site_count() + 1 ||
        image_offsets_.size() != image_count() + 1 ||
        image_targets_.size() != site_targets_.size() ||
        site_offsets_.back() != site_targets_.size() ||
        image_offsets_.back() != image_targets_.size()) {
      throw validation_error("graph adjacency sizes disagree");
    }
    EdgeCount reverse_hits = 0;
    for (size_t s = 0; s < site_count(); ++s) {
      auto row = site_neighbors(s);
      for (size_t j = 0; j < row.size(); ++j) {
        if (row[j] >= image_count() || (j > 0 && row[j - 1] >= row[j])) {
          throw validation_error("forward adjacency row not sorted/unique");
        }
        auto back = image_neighbors(row[j]);
        if (!std::binary_search(back.begin(), back.end(), static_cast<VertexId>(s))) {
          throw validation_error("forward edge missing from reverse adjacency");
        }
        ++reverse_hits;
      }
    }
    for (size_t i = 0; i < image_count(); ++i) {
      auto row = image_neighbors(i);
      for (size_t j = 1; j < row.size(); ++j) {
        if (row[j - 1] >= row[j]) {
          throw validation_error("reverse adjacency row not sorted/unique");
        }
      }
    }
    if (reverse_hits != edge_count()) {
      throw validation_error("adjacency transposes disagree");
    }
  }

  /// Bytes held by the adjacency arrays and key strings.
  size_t memory_bytes() const {
    size_t bytes = (site_offsets_.capacity() + image_offsets_.capacity()) *
                       sizeof(EdgeCount) +
                   (site_targets_.capacity() + image_targets_.capacity()) *
                       sizeof(VertexId);
    for (const auto& k : site_keys_) bytes += sizeof(std::string) + k.capacity();
    for (const auto& k : image_keys_) bytes += sizeof(std::string) + k.capacity();
    return bytes;
  }

  friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

 private:
  friend class GraphBuilder;
  friend BipartiteGraph drop_imageless_sites(const BipartiteGraph& g);

  void check_vertex(VertexId v) const {
    if (v >= vertex_count()) {
      throw validation_error("vertex index " + std::to_string(v) +
                             " out of range (" + std::to_string(vertex_count()) +
                             " vertices)");
    }
  }

  static std::optional<VertexId> find_in(const std::vector<std::string>& keys,
                                         std::string_view key) {
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it == keys.end() || *it != key) return std::nullopt;
    return static_cast<VertexId>(it - keys.begin());
  }

  // Fills the reverse adjacency from the forward one.
  void build_reverse() {
    image_offsets_.assign(image_count() + 1, 0);
    for (VertexId i : site_targets_) ++image_offsets_[i + 1];
    std::partial_sum(image_offsets_.begin(), image_offsets_.end(),
                     image_offsets_.begin());
    image_targets_.resize(site_targets_.size());
    std::vector<EdgeCount> cursor(image_offsets_.begin(), image_offsets_.end() - 1);
    for (size_t s = 0; s < site_count(); ++s) {
      for (VertexId i : site_neighbors(s)) {
        image_targets_[cursor[i]++] = static_cast<VertexId>(s);
      }
    }
  }

  std::vector<std::string> site_keys_;
  std::vector<std::string> image_keys_;
  std::vector<EdgeCount> site_offsets_;
  std::vector<VertexId> site_targets_;
  std::vector<EdgeCount> image_offsets_;
  std::vector<VertexId> image_targets_;
};

/// Accumulates vertices and (possibly repeated) edges in any order and
/// finalizes them into a canonical BipartiteGraph.
class GraphBuilder {
 public:
  VertexId add_site(std::string_view key) { return intern(sites_, site_ids_, key); }
  VertexId add_image(std::string_view key) { return intern(images_, image_ids_, key); }

  /// Ids are the ones returned by add_site / add_image.
  void add_edge(VertexId site, VertexId image) {
    if (site >= sites_.size() || image >= images_.size()) {
      throw validation_error("edge endpoint was never added to the builder");
    }
    edges_.emplace_back(site, image);
  }

  void add_edge(std::string_view site, std::string_view image) {
    add_edge(add_site(site), add_image(image));
  }

  size_t pending_edges() const { return edges_.size(); }

  /// Number of repeated (site, image) pairs folded away by the last build().
  EdgeCount duplicates_collapsed() const { return duplicates_; }

  /// Consumes the accumulated input.
  BipartiteGraph build() {
    BipartiteGraph g;
    auto site_rank = canonical_order(sites_, g.site_keys_);
    auto image_rank = canonical_order(images_, g.image_keys_);
    for (auto& [s, i] : edges_) {
      s = site_rank[s];
      i = image_rank[i];
    }
    std::sort(edges_.begin(), edges_.end());
    auto last = std::unique(edges_.begin(), edges_.end());
    duplicates_ = static_cast<EdgeCount>(edges_.end() - last);
    edges_.erase(last, edges_.end());

    g.site_offsets_.assign(g.site_keys_.size() + 1, 0);
    g.site_targets_.reserve(edges_.size());
    for (const auto& [s, i] : edges_) {
      ++g.site_offsets_[s + 1];
      g.site_targets_.push_back(i);
    }
    std::partial_sum(g.site_offsets_.begin(), g.site_offsets_.end(),
                     g.site_offsets_.begin());
    g.build_reverse();

    sites_.clear();
    images_.clear();
    site_ids_.clear();
    image_ids_.clear();
    edges_.clear();
    edges_.shrink_to_fit();
    return g;
  }

 private:
  static VertexId intern(std::vector<std::string>& keys,
                         std::unordered_map<std::string, VertexId>& ids,
                         std::string_view key) {
    auto [it, inserted] =
        ids.try_emplace(std::string(key), static_cast<VertexId>(keys.size()));
    if (inserted) keys.emplace_back(key);
    return it->second;
  }

  // Sorts keys into `sorted` and returns provisional id -> canonical index.
  static std::vector<VertexId> canonical_order(std::vector<std::string>& keys,
                                               std::vector<std::string>& sorted) {
    std::vector<VertexId> order(keys.size());
    std::iota(order.begin(), order.end(), VertexId{0});
    std::sort(order.begin(), order.end(),
              [&](VertexId a, VertexId b) { return keys[a] < keys[b]; });
    std::vector<VertexId> rank(keys.size());
    sorted.clear();
    sorted.reserve(keys.size());
    for (size_t r = 0; r < order.size(); ++r) {
      rank[order[r]] = static_cast<VertexId>(r);
      sorted.push_back(std::move(keys[order[r]]));
    }
    return rank;
  }

  std::vector<std::string> sites_;
  std::vector<std::string> images_;
  std::unordered_map<std::string, VertexId> site_ids_;
  std::unordered_map<std::string, VertexId> image_ids_;
  std::vector<std::pair<VertexId, VertexId>> edges_;
  EdgeCount duplicates_ = 0;
};

/// Removes sites with no image links. Image indices and the edge set are
/// unchanged; surviving sites keep their relative order.
inline BipartiteGraph drop_imageless_sites(const BipartiteGraph& g) {
  BipartiteGraph out;
  std::vector<VertexId> new_index(g.site_count(), 0);
  out.site_offsets_.assign(1, 0);
  for (size_t s = 0; s < g.site_count(); ++s) {
    auto row = g.site_neighbors(s);
    if (row.empty()) continue;
    new_index[s] = static_cast<VertexId>(out.site_keys_.size());
    out.site_keys_.push_back(g.site_keys_[s]);
    out.site_offsets_.push_back(out.site_offsets_.back() + row.size());
  }
  out.site_targets_ = g.site_targets_;
  out.image_keys_ = g.image_keys_;
  out.image_offsets_ = g.image_offsets_;
  out.image_targets_.reserve(g.image_targets_.size());
  for (VertexId s : g.image_targets_) out.image_targets_.push_back(new_index[s]);
  return out;
}

}  // namespace linkprop

#endif  // LINKPROP_GRAPH_HPP_
