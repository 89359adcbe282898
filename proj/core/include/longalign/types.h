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

#ifndef LONGALIGN_TYPES_H_
#define LONGALIGN_TYPES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace longalign {

// Frame duration assumed when an input does not declare one.
inline constexpr double kDefaultFrameDurationMs = 25.0;

// The CTC output alphabet: the valid characters plus a blank symbol at a
// fixed index. Label indices are dense over characters + blank; the blank
// occupies `blank_index` and characters fill the remaining slots in order.
class LabelSet {
 public:
  // Throws InvariantError on duplicate characters or blank_index > size.
  LabelSet(std::u32string characters, size_t blank_index);

  // Number of labels including the blank.
  size_t size() const { return characters_.size() + 1; }
  size_t blank_index() const { return blank_index_; }
  const std::u32string& characters() const { return characters_; }

  bool IsBlank(size_t label) const { return label == blank_index_; }

  // Character for a non-blank label. Throws InvariantError for the blank or
  // an out-of-range index.
  char32_t CharAt(size_t label) const;

  // Label index of `c`, or nullopt when `c` is not in the set.
  std::optional<size_t> IndexOf(char32_t c) const;

 private:
  std::u32string characters_;
  size_t blank_index_;
  std::vector<std::pair<char32_t, size_t>> sorted_index_;
};

// Per-frame log-scores over a LabelSet, stored row-major.
class EmissionMatrix {
 public:
  EmissionMatrix() = default;
  // Throws InvariantError when scores.size() != frames * labels, a score is
  // not finite, or frame_duration_ms <= 0.
  EmissionMatrix(std::string audio_id, size_t frame_count, size_t label_count,
                 std::vector<float> scores, double frame_duration_ms = kDefaultFrameDurationMs);

  const std::string& audio_id() const { return audio_id_; }
  size_t frame_count() const { return frame_count_; }
  size_t label_count() const { return label_count_; }
  double frame_duration_ms() const { return frame_duration_ms_; }
  std::span<const float> scores() const { return scores_; }
  std::span<const float> row(size_t frame) const {
    return std::span<const float>(scores_).subspan(frame * label_count_, label_count_);
  }
  double duration_ms() const { return static_cast<double>(frame_count_) * frame_duration_ms_; }

  friend bool operator==(const EmissionMatrix&, const EmissionMatrix&) = default;

 private:
  std::string audio_id_;
  size_t frame_count_ = 0;
  size_t label_count_ = 0;
  std::vector<float> scores_;
  double frame_duration_ms_ = kDefaultFrameDurationMs;
};

// One label index per frame.
using GreedyPath = std::vector<uint32_t>;

// Inclusive frame range.
struct FrameSpan {
  int64_t start = 0;
  int64_t end = 0;
  friend bool operator==(const FrameSpan&, const FrameSpan&) = default;
};

// Inclusive index range into a character sequence.
struct CharRange {
  size_t begin = 0;
  size_t end = 0;
  size_t length() const { return end - begin + 1; }
  friend bool operator==(const CharRange&, const CharRange&) = default;
};

// Collapsed CTC output: one character per non-blank run, with the frame
// span the run occupied.
struct PredictedText {
  std::u32string chars;
  std::vector<FrameSpan> spans;

  // Throws InvariantError unless |chars| == |spans|, every span is
  // non-empty, spans are strictly increasing, and (when frame_count is
  // given) every span lies below frame_count.
  void Validate(std::optional<int64_t> frame_count = std::nullopt) const;

  friend bool operator==(const PredictedText&, const PredictedText&) = default;
};

// Cleaned reference transcript with sentence boundaries.
struct ReferenceDocument {
  std::u32string text;
  std::vector<CharRange> sentences;

  size_t sentence_count() const { return sentences.size(); }
  std::u32string_view sentence(size_t i) const {
    return std::u32string_view(text).substr(sentences[i].begin, sentences[i].length());
  }

  // Throws InvariantError unless sentences are ordered, disjoint and inside
  // the text.
  void Validate() const;

  friend bool operator==(const ReferenceDocument&, const ReferenceDocument&) = default;
};

// Needleman-Wunsch character scores.
struct ScoreParams {
  int64_t match = 10;
  int64_t mismatch = -5;
  int64_t gap = -5;

  // Rejects parameter sets where match does not dominate mismatch and gap.
  void Validate() const;

  int64_t Pair(char32_t a, char32_t b) const { return a == b ? match : mismatch; }

  friend bool operator==(const ScoreParams&, const ScoreParams&) = default;
};

enum class StepKind : uint8_t {
  kMatch,
  kMismatch,
  kGapInP,  // reference character aligned to nothing in the prediction
  kGapInR,  // predicted character aligned to nothing in the reference
};

struct AlignStep {
  StepKind kind;
  int64_t r = -1;  // reference index, -1 for kGapInR
  int64_t p = -1;  // prediction index, -1 for kGapInP
  friend bool operator==(const AlignStep&, const AlignStep&) = default;
};

// A global alignment between reference R and prediction P, in order.
struct AlignmentMap {
  std::vector<AlignStep> steps;

  // Replays the steps and throws InvariantError unless they consume every
  // index of R (length r_size) and P (length p_size) exactly once in order,
  // with kinds consistent with the indices present.
  void Validate(size_t r_size, size_t p_size) const;

  friend bool operator==(const AlignmentMap&, const AlignmentMap&) = default;
};

// One mined audio/text pair.
struct SegmentRecord {
  std::string audio_id;
  double start_ms = 0;
  double end_ms = 0;
  std::string ref_text;  // UTF-8
  std::string hyp_text;  // UTF-8
  double score = 0;

  friend bool operator==(const SegmentRecord&, const SegmentRecord&) = default;
};

}  // namespace longalign

#endif  // LONGALIGN_TYPES_H_
