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

#ifndef LONGALIGN_SIMILARITY_H_
#define LONGALIGN_SIMILARITY_H_

#include <cstddef>
#include <string_view>

namespace longalign {

// Unit-cost edit distance (insert, delete, substitute) over code points.
size_t Levenshtein(std::u32string_view a, std::u32string_view b);

// Similarity ratio 1 - LD(r, p) / (|r| + |p|), in [0, 1] and equal to 1
// exactly when r == p. Throws InvariantError when both strings are empty.
double AlignmentScore(std::u32string_view reference, std::u32string_view predicted);

}  // namespace longalign

#endif  // LONGALIGN_SIMILARITY_H_
