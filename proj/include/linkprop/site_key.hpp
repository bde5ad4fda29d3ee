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

#ifndef LINKPROP_SITE_KEY_HPP_
#define LINKPROP_SITE_KEY_HPP_

#include <algorithm>
#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "linkprop/error.hpp"

namespace linkprop {

namespace detail {

inline std::string_view trim(std::string_view s) {
  auto is_space = [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

inline std::vector<std::string_view> split_labels(std::string_view host) {
  std::vector<std::string_view> labels;
  size_t start = 0;
  while (true) {
    size_t dot = host.find('.', start);
    labels.push_back(host.substr(start, dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return labels;
}

inline bool is_host_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' ||
         c == '_' || c == '.';
}

inline bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
           return c >= '0' && c <= '9';
         });
}

// Lowercased host of a URL or bare host name, trailing dot removed.
// Throws RejectedRecord when nothing host-like remains.
inline std::string extract_host(std::string_view raw) {
  std::string_view s = trim(raw);
  if (s.empty()) throw RejectedRecord(std::string(raw), "empty site url");

  if (size_t scheme = s.find("://"); scheme != std::string_view::npos) {
    s.remove_prefix(scheme + 3);
  } else if (s.substr(0, 2) == "//") {
    s.remove_prefix(2);
  }
  s = s.substr(0, s.find_first_of("/?#"));
  if (size_t at = s.rfind('@'); at != std::string_view::npos) {
    s.remove_prefix(at + 1);
  }
  if (size_t colon = s.rfind(':'); colon != std::string_view::npos) {
    std::string_view port = s.substr(colon + 1);
    if (!port.empty() && !all_digits(port)) {
      throw RejectedRecord(std::string(raw), "malformed port in site url");
    }
    s = s.substr(0, colon);
  }
  std::string host = to_lower(s);
  if (!host.empty() && host.back() == '.') host.pop_back();

  if (host.empty()) throw RejectedRecord(std::string(raw), "no host in site url");
  if (!std::all_of(host.begin(), host.end(), is_host_char)) {
    throw RejectedRecord(std::string(raw), "invalid character in host");
  }
  for (std::string_view label : split_labels(host)) {
    if (label.empty()) throw RejectedRecord(std::string(raw), "empty host label");
  }
  return host;
}

}  // namespace detail

/// Second-level domains whose subdomains stay distinct vertices
/// (blog hostings such as livejournal.com).
class HostingExceptions {
 public:
  HostingExceptions() = default;

  HostingExceptions(std::initializer_list<std::string_view> domains) {
    for (auto d : domains) add(d);
  }

  /// Adds a domain after case folding; anything other than exactly two
  /// labels is rejected.
  void add(std::string_view domain) {
    std::string host = detail::extract_host(domain);
    if (detail::split_labels(host).size() != 2) {
      throw validation_error("hosting exception must be a second-level domain: '" +
                             std::string(domain) + "'");
    }
    domains_.insert(std::move(host));
  }

  bool contains(std::string_view second_level) const {
    return domains_.find(std::string(second_level)) != domains_.end();
  }

  size_t size() const { return domains_.size(); }
  bool empty() const { return domains_.empty(); }

 private:
  std::set<std::string> domains_;
};

/// Maps a URL or host to its site vertex key: the last two host labels, or
/// the full host when those two labels are a listed hosting. Dotted-quad
/// IPv4 hosts are kept whole.
inline std::string normalize_site_url(std::string_view raw,
                                      const HostingExceptions& exceptions = {}) {
  std::string host = detail::extract_host(raw);
  auto labels = detail::split_labels(host);
  if (labels.size() <= 2) return host;
  if (labels.size() == 4 && std::all_of(labels.begin(), labels.end(),
                                        detail::all_digits)) {
    return host;
  }
  std::string_view tail(host);
  tail.remove_prefix(static_cast<size_t>(labels[labels.size() - 2].data() - host.data()));
  if (exceptions.contains(tail)) return host;
  return std::string(tail);
}

}  // namespace linkprop

#endif  // LINKPROP_SITE_KEY_HPP_
