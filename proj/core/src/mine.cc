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

#include "longalign/mine.h"

#include <algorithm>

#include "longalign/ctc.h"
#include "longalign/errors.h"
#include "longalign/similarity.h"
#include "longalign/unicode.h"

namespace longalign {

void FilterConfig::Validate() const {
  if (!(tau > 0 && tau <= 1)) throw InvariantError("tau must lie in (0, 1]");
}

void MiningReport::Add(const MiningReport& other) {
  total_sentences += other.total_sentences;
  kept += other.kept;
  dropped_low_score += other.dropped_low_score;
  dropped_empty += other.dropped_empty;
  audio_total_ms += other.audio_total_ms;
  audio_kept_ms += other.audio_kept_ms;
  yield_fraction = audio_total_ms > 0 ? audio_kept_ms / audio_total_ms : 0.0;
}

void MineOptions::Validate() const {
  aligner.Validate();
  filter.Validate();
  if (!(pad_ms >= 0)) throw InvariantError("pad_ms must be non-negative");
}

MineResult MineDocument(const EmissionMatrix& emissions, const LabelSet& labels,
                        const ReferenceDocument& reference, const MineOptions& options) {
  if (emissions.label_count() != labels.size()) {
    throw InvariantError("emission matrix has " + std::to_string(emissions.label_count()) +
                         " labels, label set has " + std::to_string(labels.size()));
  }
  const PredictedText predicted = Collapse(GreedyDecode(emissions), labels);
  return MinePredicted(emissions.audio_id(), predicted,
                       static_cast<int64_t>(emissions.frame_count()),
                       emissions.frame_duration_ms(), reference, options);
}

MineResult MinePredicted(const std::string& audio_id, const PredictedText& predicted,
                         int64_t frame_count, double frame_duration_ms,
                         const ReferenceDocument& reference, const MineOptions& options) {
  options.Validate();
  reference.Validate();
  if (!(frame_duration_ms > 0)) throw InvariantError("frame duration must be positive");
  if (frame_count <= 0) frame_count = predicted.spans.empty() ? 0 : predicted.spans.back().end + 1;
  predicted.Validate(frame_count);

  const double d = frame_duration_ms;
  MineResult result;
  MiningReport& report = result.report;
  report.total_sentences = static_cast<int64_t>(reference.sentence_count());
  report.audio_total_ms = static_cast<double>(frame_count) * d;

  if (predicted.chars.empty()) {
    report.dropped_empty = report.total_sentences;
    return result;
  }

  const AlignmentMap map = Align(reference.text, predicted.chars, options.aligner);
  const std::vector<SentenceSpan> spans = ProjectSentences(reference, map, predicted);

  // Neighbouring sentence audio bounds how far padding may reach.
  std::vector<size_t> nonempty;
  for (size_t k = 0; k < spans.size(); ++k) {
    if (spans[k].frame_range) nonempty.push_back(k);
  }
  const double audio_end = report.audio_total_ms;

  for (size_t n = 0; n < nonempty.size(); ++n) {
    const SentenceSpan& span = spans[nonempty[n]];
    const FrameSpan frames = *span.frame_range;
    TimeInterval interval = FramesToInterval(frames, d, options.pad_ms);
    if (options.pad_ms > 0) {
      const double own_start = static_cast<double>(frames.start) * d;
      const double own_end = static_cast<double>(frames.end + 1) * d;
      if (n > 0) {
        const double prev_end = static_cast<double>(spans[nonempty[n - 1]].frame_range->end + 1) * d;
        interval.start_ms = std::max(interval.start_ms, (prev_end + own_start) / 2);
      }
      if (n + 1 < nonempty.size()) {
        const double next_start = static_cast<double>(spans[nonempty[n + 1]].frame_range->start) * d;
        interval.end_ms = std::min(interval.end_ms, (own_end + next_start) / 2);
      }
      interval.end_ms = std::min(interval.end_ms, std::max(audio_end, own_end));
    }

    const std::u32string_view ref = reference.sentence(span.sentence_index);
    const std::u32string_view hyp =
        std::u32string_view(predicted.chars).substr(span.p_range->begin, span.p_range->length());
    const double score = AlignmentScore(ref, hyp);
    if (score < options.filter.tau) {
      ++report.dropped_low_score;
      continue;
    }
    ++report.kept;
    report.audio_kept_ms += interval.end_ms - interval.start_ms;
    result.records.push_back({audio_id, interval.start_ms, interval.end_ms,
                              CodePointsToUtf8(ref), CodePointsToUtf8(hyp), score});
  }
  report.dropped_empty = report.total_sentences - static_cast<int64_t>(nonempty.size());
  report.yield_fraction = report.audio_total_ms > 0 ? report.audio_kept_ms / report.audio_total_ms
                                                    : 0.0;
  return result;
}

}  // namespace longalign
