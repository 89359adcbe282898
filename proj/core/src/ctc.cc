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

#include "longalign/ctc.h"

#include <random>
#include <string>

#include "longalign/errors.h"

namespace longalign {

GreedyPath GreedyDecode(const EmissionMatrix& matrix) {
  GreedyPath path(matrix.frame_count());
  for (size_t t = 0; t < matrix.frame_count(); ++t) {
    const auto row = matrix.row(t);
    uint32_t best = 0;
    for (uint32_t k = 1; k < row.size(); ++k) {
      if (row[k] > row[best]) best = k;
    }
    path[t] = best;
  }
  return path;
}

PredictedText Collapse(const GreedyPath& path, const LabelSet& labels) {
  PredictedText out;
  const size_t blank = labels.blank_index();
  size_t prev = blank;
  for (size_t t = 0; t < path.size(); ++t) {
    const size_t label = path[t];
    if (label >= labels.size()) {
      throw InvariantError("path label " + std::to_string(label) + " at frame " +
                           std::to_string(t) + " outside label set");
    }
    if (label != blank) {
      if (label == prev) {
        out.spans.back().end = static_cast<int64_t>(t);
      } else {
        out.chars.push_back(labels.CharAt(label));
        out.spans.push_back({static_cast<int64_t>(t), static_cast<int64_t>(t)});
      }
    }
    prev = label;
  }
  return out;
}

int64_t MinimumFrames(std::u32string_view chars) {
  int64_t frames = static_cast<int64_t>(chars.size());
  for (size_t i = 1; i < chars.size(); ++i) frames += chars[i] == chars[i - 1];
  return frames;
}

GreedyPath Expand(std::u32string_view chars, int64_t total_frames, const LabelSet& labels,
                  uint64_t seed) {
  const int64_t needed = MinimumFrames(chars);
  if (total_frames < needed) {
    throw InvariantError("frame budget " + std::to_string(total_frames) + " below the " +
                         std::to_string(needed) + " frames required");
  }
  const size_t n = chars.size();
  std::vector<uint32_t> label_of(n);
  for (size_t i = 0; i < n; ++i) {
    auto idx = labels.IndexOf(chars[i]);
    if (!idx) throw InvariantError("character not in label set");
    label_of[i] = static_cast<uint32_t>(*idx);
  }

  // Slots 0..n-1 are character runs (length >= 1). Slots n..2n are the blank
  // runs before character 0, between characters, and after the last one;
  // a blank slot between equal characters has length >= 1.
  std::vector<int64_t> run(2 * n + 1, 0);
  for (size_t i = 0; i < n; ++i) run[i] = 1;
  for (size_t i = 1; i < n; ++i) run[n + i] = chars[i] == chars[i - 1] ? 1 : 0;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<size_t> pick(0, run.size() - 1);
  for (int64_t extra = total_frames - needed; extra > 0; --extra) ++run[pick(rng)];

  GreedyPath path;
  path.reserve(static_cast<size_t>(total_frames));
  const auto blank = static_cast<uint32_t>(labels.blank_index());
  for (size_t i = 0; i <= n; ++i) {
    path.insert(path.end(), static_cast<size_t>(run[n + i]), blank);
    if (i < n) path.insert(path.end(), static_cast<size_t>(run[i]), label_of[i]);
  }
  return path;
}

}  // namespace longalign
