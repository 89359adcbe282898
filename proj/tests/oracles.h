// Copyright 2026 The longalign Authors.
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

// Reference implementations used only by tests. Deliberately naive and
// written without reference to the library code they check.

#ifndef LONGALIGN_TESTS_ORACLES_H_
#define LONGALIGN_TESTS_ORACLES_H_

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace oracles {

// Edit distance straight from the recursive definition.
inline size_t RecursiveLevenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.empty()) return b.size();
  if (b.empty()) return a.size();
  // Consuming an equal leading pair is always optimal.
  if (a[0] == b[0]) return RecursiveLevenshtein(a.substr(1), b.substr(1));
  return 1 + std::min({RecursiveLevenshtein(a.substr(1), b),
                       RecursiveLevenshtein(a, b.substr(1)),
                       RecursiveLevenshtein(a.substr(1), b.substr(1))});
}

// Every global alignment of r and p, as a string over {'M','U','L'}:
// M consumes one character of each, U one of r, L one of p.
inline void EnumerateAlignments(size_t n, size_t m, std::string& prefix,
                                std::vector<std::string>& out) {
  if (n == 0 && m == 0) {
    out.push_back(prefix);
    return;
  }
  if (n > 0 && m > 0) {
    prefix.push_back('M');
    EnumerateAlignments(n - 1, m - 1, prefix, out);
    prefix.pop_back();
  }
  if (n > 0) {
    prefix.push_back('U');
    EnumerateAlignments(n - 1, m, prefix, out);
    prefix.pop_back();
  }
  if (m > 0) {
    prefix.push_back('L');
    EnumerateAlignments(n, m - 1, prefix, out);
    prefix.pop_back();
  }
}

inline int64_t ScoreOf(const std::string& ops, std::u32string_view r, std::u32string_view p,
                       int64_t match, int64_t mismatch, int64_t gap) {
  int64_t total = 0;
  size_t i = 0, j = 0;
  for (char op : ops) {
    if (op == 'M') {
      total += r[i++] == p[j++] ? match : mismatch;
    } else {
      total += gap;
      op == 'U' ? ++i : ++j;
    }
  }
  return total;
}

inline int64_t BestByEnumeration(std::u32string_view r, std::u32string_view p, int64_t match,
                                 int64_t mismatch, int64_t gap) {
  std::vector<std::string> all;
  std::string prefix;
  EnumerateAlignments(r.size(), p.size(), prefix, all);
  int64_t best = INT64_MIN;
  for (const std::string& ops : all) best = std::max(best, ScoreOf(ops, r, p, match, mismatch, gap));
  return best;
}

// Relabels the letters of r + p in order of first appearance, so pairs
// that differ only by a permutation of the alphabet share a key.
inline std::u32string CanonicalPair(std::u32string_view r, std::u32string_view p) {
  std::map<char32_t, char32_t> rename;
  std::u32string key;
  auto add = [&](char32_t c) {
    auto it = rename.find(c);
    if (it == rename.end()) it = rename.emplace(c, U'A' + static_cast<char32_t>(rename.size())).first;
    key.push_back(it->second);
  };
  for (char32_t c : r) add(c);
  key.push_back(U'|');
  for (char32_t c : p) add(c);
  return key;
}

inline std::string Utf8(std::u32string_view s) {
  std::string out;
  for (char32_t c : s) {
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (c >> 6)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (c >> 12)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (c >> 18)));
      out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
  }
  return out;
}

// Collapse of a frame-level label path, written as a run-length pass:
// returns (label, first frame, last frame) for each emitted character.
struct Emitted {
  uint32_t label;
  int64_t first;
  int64_t last;
};

inline std::vector<Emitted> NaiveCollapse(const std::vector<uint32_t>& path, uint32_t blank) {
  std::vector<Emitted> out;
  for (size_t t = 0; t < path.size(); ++t) {
    const bool new_run = t == 0 || path[t] != path[t - 1];
    if (path[t] == blank) continue;
    if (new_run) {
      out.push_back({path[t], static_cast<int64_t>(t), static_cast<int64_t>(t)});
    } else {
      out.back().last = static_cast<int64_t>(t);
    }
  }
  return out;
}

}  // namespace oracles

#endif  // LONGALIGN_TESTS_ORACLES_H_
