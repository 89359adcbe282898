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

// The per-document mining pipeline: greedy CTC decode, collapse, global
// alignment, sentence projection, similarity scoring and threshold filter.

#ifndef LONGALIGN_MINE_H_
#define LONGALIGN_MINE_H_

#include <string>
#include <vector>

#include "longalign/align.h"
#include "longalign/types.h"

namespace longalign {

struct FilterConfig {
  // Pairs scoring below tau are dropped; a score equal to tau is kept.
  double tau = 0.8;
  void Validate() const;
};

struct MiningReport {
  int64_t total_sentences = 0;
  int64_t kept = 0;
  int64_t dropped_low_score = 0;
  int64_t dropped_empty = 0;
  double audio_total_ms = 0;
  double audio_kept_ms = 0;
  double yield_fraction = 0;

  // Accumulates another report and recomputes the yield.
  void Add(const MiningReport& other);
  friend bool operator==(const MiningReport&, const MiningReport&) = default;
};

struct MineOptions {
  AlignerConfig aligner;
  FilterConfig filter;
  // Widens every interval on both sides. Padding never crosses the midpoint
  // to a neighbouring sentence's audio, nor the ends of the recording.
  double pad_ms = 0;

  void Validate() const;
};

struct MineResult {
  std::vector<SegmentRecord> records;
  MiningReport report;
};

// Runs the whole pipeline on one recording.
MineResult MineDocument(const EmissionMatrix& emissions, const LabelSet& labels,
                        const ReferenceDocument& reference, const MineOptions& options);

// Same, starting from an already collapsed prediction. frame_count, when
// known, bounds the padded intervals and sets the yield denominator; when
// it is zero or negative the last span end is used instead.
MineResult MinePredicted(const std::string& audio_id, const PredictedText& predicted,
                         int64_t frame_count, double frame_duration_ms,
                         const ReferenceDocument& reference, const MineOptions& options);

}  // namespace longalign

#endif  // LONGALIGN_MINE_H_
