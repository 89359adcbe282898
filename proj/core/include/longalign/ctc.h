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

#ifndef LONGALIGN_CTC_H_
#define LONGALIGN_CTC_H_

#include <cstdint>

#include "longalign/types.h"

namespace longalign {

// Per-frame argmax over the emission scores. Ties go to the lowest label
// index.
GreedyPath GreedyDecode(const EmissionMatrix& matrix);

// Standard CTC collapse. Each maximal run of one non-blank label becomes a
// single character whose span covers exactly the run's frames; blank frames
// belong to no character. A blank between two runs of the same label keeps
// them as two characters. Throws InvariantError if a path entry is not a
// valid label.
PredictedText Collapse(const GreedyPath& path, const LabelSet& labels);

// Minimum number of frames a path realizing `chars` needs: one per
// character plus one separating blank between equal neighbours.
int64_t MinimumFrames(std::u32string_view chars);

// Builds a random path of exactly `total_frames` frames that collapses back
// to `chars`. Extra frames are spread at random over character runs and
// blank runs. Deterministic for a given seed. Throws InvariantError if the
// frame budget is too small or a character is not in `labels`.
GreedyPath Expand(std::u32string_view chars, int64_t total_frames, const LabelSet& labels,
                  uint64_t seed);

}  // namespace longalign

#endif  // LONGALIGN_CTC_H_
