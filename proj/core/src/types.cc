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

#include "longalign/types.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "longalign/errors.h"

namespace longalign {

LabelSet::LabelSet(std::u32string characters, size_t blank_index)
    : characters_(std::move(characters)), blank_index_(blank_index) {
  if (blank_index_ > characters_.size()) {
    throw InvariantError("blank index " + std::to_string(blank_index_) +
                         " outside label range of size " + std::to_string(size()));
  }
  sorted_index_.reserve(characters_.size());
  for (size_t i = 0; i < characters_.size(); ++i) {
    const size_t label = i < blank_index_ ? i : i + 1;
    sorted_index_.emplace_back(characters_[i], label);
  }
  std::sort(sorted_index_.begin(), sorted_index_.end());
  for (size_t i = 1; i < sorted_index_.size(); ++i) {
    if (sorted_index_[i].first == sorted_index_[i - 1].first) {
      throw InvariantError("duplicate label character U+" +
                           std::to_string(static_cast<uint32_t>(sorted_index_[i].first)));
    }
  }
}

char32_t LabelSet::CharAt(size_t label) const {
  if (label == blank_index_ || label >= size()) {
    throw InvariantError("label " + std::to_string(label) + " has no character");
  }
  return characters_[label < blank_index_ ? label : label - 1];
}

std::optional<size_t> LabelSet::IndexOf(char32_t c) const {
  auto it = std::lower_bound(sorted_index_.begin(), sorted_index_.end(), c,
                             [](const auto& entry, char32_t v) { return entry.first < v; });
  if (it == sorted_index_.end() || it->first != c) return std::nullopt;
  return it->second;
}

EmissionMatrix::EmissionMatrix(std::string audio_id, size_t frame_count, size_t label_count,
                               std::vector<float> scores, double frame_duration_ms)
    : audio_id_(std::move(audio_id)),
      frame_count_(frame_count),
      label_count_(label_count),
      scores_(std::move(scores)),
      frame_duration_ms_(frame_duration_ms) {
  if (label_count_ != 0 && frame_count_ > scores_.max_size() / label_count_) {
    throw InvariantError("emission matrix shape overflows");
  }
  if (scores_.size() != frame_count_ * label_count_) {
    throw InvariantError("emission matrix has " + std::to_string(scores_.size()) +
                         " scores, expected " + std::to_string(frame_count_ * label_count_));
  }
  if (!(frame_duration_ms_ > 0) || !std::isfinite(frame_duration_ms_)) {
    throw InvariantError("frame duration must be positive");
  }
  for (size_t i = 0; i < scores_.size(); ++i) {
    if (!std::isfinite(scores_[i])) {
      throw InvariantError("non-finite emission score at frame " +
                           std::to_string(i / label_count_) + ", label " +
                           std::to_string(i % label_count_));
    }
  }
}

void PredictedText::Validate(std::optional<int64_t> frame_count) const {
  if (chars.size() != spans.size()) {
    throw InvariantError("predicted text has " + std::to_string(chars.size()) +
                         " characters but " + std::to_string(spans.size()) + " spans");
  }
  for (size_t i = 0; i < spans.size(); ++i) {
    const FrameSpan& s = spans[i];
    if (s.start < 0 || s.start > s.end) {
      throw InvariantError("span " + std::to_string(i) + " is empty or negative");
    }
    if (i > 0 && spans[i - 1].end >= s.start) {
      throw InvariantError("span " + std::to_string(i) + " overlaps its predecessor");
    }
    if (frame_count && s.end >= *frame_count) {
      throw InvariantError("span " + std::to_string(i) + " exceeds frame count");
    }
  }
}

void ReferenceDocument::Validate() const {
  for (size_t i = 0; i < sentences.size(); ++i) {
    const CharRange& s = sentences[i];
    if (s.begin > s.end || s.end >= text.size()) {
      throw InvariantError("sentence " + std::to_string(i) + " range is invalid");
    }
    if (i > 0 && sentences[i - 1].end >= s.begin) {
      throw InvariantError("sentence " + std::to_string(i) + " overlaps its predecessor");
    }
  }
}

void ScoreParams::Validate() const {
  if (match <= mismatch) throw InvariantError("match score must exceed mismatch score");
  if (match <= gap) throw InvariantError("match score must exceed gap score");
}

void AlignmentMap::Validate(size_t r_size, size_t p_size) const {
  int64_t next_r = 0;
  int64_t next_p = 0;
  for (size_t i = 0; i < steps.size(); ++i) {
    const AlignStep& s = steps[i];
    const bool has_r = s.kind != StepKind::kGapInR;
    const bool has_p = s.kind != StepKind::kGapInP;
    if ((has_r && s.r != next_r) || (!has_r && s.r != -1) || (has_p && s.p != next_p) ||
        (!has_p && s.p != -1)) {
      throw InvariantError("alignment step " + std::to_string(i) + " is out of order");
    }
    next_r += has_r;
    next_p += has_p;
  }
  if (next_r != static_cast<int64_t>(r_size) || next_p != static_cast<int64_t>(p_size)) {
    throw InvariantError("alignment does not consume both sequences");
  }
}

}  // namespace longalign
