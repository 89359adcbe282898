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

#ifndef LONGALIGN_RUN_CONFIG_H_
#define LONGALIGN_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "longalign/align.h"
#include "longalign/mine.h"
#include "longalign/textproc.h"

namespace longalign {

// Every tunable of a run. Loadable from an INI-style file:
//
//   [align]
//   match = 10
//   mismatch = -5
//   gap = -5
//   mode = auto            ; full | linear | auto
//   memory_budget = 512M
//
//   [filter]
//   tau = 0.8
//
//   [text]
//   eos_chars = ।॥.?!۔
//   min_header_words = 5
//   max_header_lines = 3
//   word_gap_ratio = 0.5
//
//   [audio]
//   frame_ms = 25
//   pad_ms = 0
//
//   [corpus]
//   workers = 1
//
//   [synth]
//   seed = 0
//
// Unknown sections or keys are rejected.
struct RunConfig {
  AlignerConfig aligner;
  FilterConfig filter;
  SegmenterConfig segmenter;
  double frame_ms = kDefaultFrameDurationMs;
  double pad_ms = 0;
  int workers = 1;
  uint64_t seed = 0;

  void Validate() const;
  MineOptions mine_options() const { return {aligner, filter, pad_ms}; }
  // Effective configuration as a JSON object.
  std::string ToJson() const;
};

RunConfig ParseRunConfig(std::string_view ini);
RunConfig LoadRunConfig(const std::filesystem::path& path);

AlignMode ParseAlignMode(std::string_view name);
std::string_view AlignModeName(AlignMode mode);

// "1048576", "512K", "512M", "2G" (binary multiples).
uint64_t ParseByteSize(std::string_view text);

}  // namespace longalign

#endif  // LONGALIGN_RUN_CONFIG_H_
