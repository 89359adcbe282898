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

// Document-scale global alignment of a reference transcript against CTC
// output, and projection of reference sentences onto audio frames.
//
// The aligner is Needleman-Wunsch with linear gap costs. Rows of the
// dynamic program index the reference R, columns the prediction P. Moving
// down consumes a reference character against a gap (kGapInP), moving right
// consumes a predicted character against a gap (kGapInR).
//
// Two execution modes give the same optimal score:
//
//  * kFull keeps two rolling score rows and a traceback matrix packed at two
//    bits per cell. A 20k x 20k alignment costs about 100MB.
//  * kLinearSpace is Hirschberg's divide and conquer. Memory is linear in
//    N + N'; runtime roughly doubles.
//
// kAuto picks kFull when its projected memory fits the budget.

#ifndef LONGALIGN_ALIGN_H_
#define LONGALIGN_ALIGN_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "longalign/types.h"

namespace longalign {

enum class AlignMode { kFull, kLinearSpace, kAuto };

struct AlignerConfig {
  ScoreParams scores;
  AlignMode mode = AlignMode::kAuto;
  uint64_t memory_budget_bytes = uint64_t{512} << 20;

  void Validate() const;
};

// Bytes kFull needs for an n x m problem: packed traceback plus score rows.
uint64_t FullModeMemoryBytes(size_t n, size_t m);

// Score-maximizing global alignment. Traceback ties prefer the diagonal,
// then a gap in P, then a gap in R. Throws MemoryBudgetError when mode is
// kFull and FullModeMemoryBytes exceeds the budget.
AlignmentMap Align(std::u32string_view reference, std::u32string_view predicted,
                   const AlignerConfig& config);

// Optimal score only, in linear memory.
int64_t OptimalAlignmentScore(std::u32string_view reference, std::u32string_view predicted,
                              const ScoreParams& scores);

// Sum of the per-step scores of an alignment.
int64_t AlignmentScoreTotal(const AlignmentMap& map, const ScoreParams& scores);

// Renders an alignment as two rows with '@' marking gaps, for debugging.
std::pair<std::u32string, std::u32string> RenderAlignment(const AlignmentMap& map,
                                                          std::u32string_view reference,
                                                          std::u32string_view predicted);

struct SentenceSpan {
  size_t sentence_index = 0;
  CharRange r_range;
  std::optional<CharRange> p_range;     // empty when the whole sentence hit gaps
  std::optional<FrameSpan> frame_range;  // set iff p_range is set
};

// Maps each sentence to the predicted characters and frames it aligned to.
// The predicted range runs from the first to the last reference character
// of the sentence that aligned to a predicted character; reference
// characters aligned to gaps at either edge are skipped inward.
std::vector<SentenceSpan> ProjectSentences(const ReferenceDocument& reference,
                                           const AlignmentMap& map,
                                           const PredictedText& predicted);

struct TimeInterval {
  double start_ms = 0;
  double end_ms = 0;
  friend bool operator==(const TimeInterval&, const TimeInterval&) = default;
};

// [max(0, start * d - pad), (end + 1) * d + pad) for frame duration d.
TimeInterval FramesToInterval(FrameSpan frames, double frame_duration_ms, double pad_ms);

}  // namespace longalign

#endif  // LONGALIGN_ALIGN_H_
