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

#include "longalign/run_config.h"

#include <gtest/gtest.h>

#include "json.hpp"
#include "longalign/errors.h"
#include "longalign/unicode.h"

namespace longalign {
namespace {

TEST(RunConfigTest, DefaultValues) {
  const RunConfig c = ParseRunConfig("");
  EXPECT_EQ(c.aligner.scores, (ScoreParams{10, -5, -5}));
  EXPECT_DOUBLE_EQ(c.filter.tau, 0.8);
  EXPECT_DOUBLE_EQ(c.frame_ms, 25.0);
  EXPECT_EQ(c.workers, 1);
}

TEST(RunConfigTest, ParsesEverySection) {
  const RunConfig c = ParseRunConfig(R"(
; comment
[align]
match = 4
mismatch = -2
gap = -3
mode = linear
memory_budget = 64M

[filter]
tau = 0.9

[text]
eos_chars = .!
min_header_words = 4
max_header_lines = 2
word_gap_ratio = 0.7

[audio]
frame_ms = 20
pad_ms = 100

[corpus]
workers = 6

[synth]
seed = 42
)");
  EXPECT_EQ(c.aligner.scores, (ScoreParams{4, -2, -3}));
  EXPECT_EQ(c.aligner.mode, AlignMode::kLinearSpace);
  EXPECT_EQ(c.aligner.memory_budget_bytes, uint64_t{64} << 20);
  EXPECT_DOUBLE_EQ(c.filter.tau, 0.9);
  EXPECT_EQ(c.segmenter.eos_characters, U".!");
  EXPECT_EQ(c.segmenter.min_header_words, 4);
  EXPECT_EQ(c.segmenter.max_header_lines, 2);
  EXPECT_DOUBLE_EQ(c.segmenter.word_gap_ratio, 0.7);
  EXPECT_DOUBLE_EQ(c.frame_ms, 20);
  EXPECT_DOUBLE_EQ(c.pad_ms, 100);
  EXPECT_EQ(c.workers, 6);
  EXPECT_EQ(c.seed, 42u);
}

TEST(RunConfigTest, UnknownKeysRejected) {
  EXPECT_THROW(ParseRunConfig("[align]\nmatchh = 3\n"), FormatError);
  EXPECT_THROW(ParseRunConfig("[aligner]\nmatch = 3\n"), FormatError);
  EXPECT_THROW(ParseRunConfig("tau = 0.8\n"), FormatError);
}

TEST(RunConfigTest, BadValuesRejected) {
  EXPECT_THROW(ParseRunConfig("[filter]\ntau = high\n"), FormatError);
  EXPECT_THROW(ParseRunConfig("[filter]\ntau = 1.5\n"), FormatError);
  EXPECT_THROW(ParseRunConfig("[align]\nmode = fast\n"), FormatError);
  EXPECT_THROW(ParseRunConfig("[align]\nmatch = -10\n"), FormatError);
  EXPECT_THROW(ParseRunConfig("[corpus]\nworkers = 0\n"), FormatError);
  EXPECT_THROW(ParseRunConfig("[align\n"), FormatError);
}

TEST(RunConfigTest, ByteSizes) {
  EXPECT_EQ(ParseByteSize("1024"), 1024u);
  EXPECT_EQ(ParseByteSize("2K"), 2048u);
  EXPECT_EQ(ParseByteSize("3g"), uint64_t{3} << 30);
  EXPECT_THROW(ParseByteSize(""), FormatError);
  EXPECT_THROW(ParseByteSize("12Q"), FormatError);
  EXPECT_THROW(ParseByteSize("99999999999999G"), FormatError);
}

TEST(RunConfigTest, JsonEchoReparses) {
  RunConfig c;
  c.segmenter.eos_characters = U"।.";
  c.aligner.mode = AlignMode::kFull;
  const auto j = nlohmann::json::parse(c.ToJson());
  EXPECT_EQ(j["align"]["mode"], "full");
  EXPECT_EQ(j["text"]["eos_chars"], CodePointsToUtf8(U"।."));
  EXPECT_EQ(j["filter"]["tau"], 0.8);
}

TEST(RunConfigTest, ModeNames) {
  for (AlignMode m : {AlignMode::kFull, AlignMode::kLinearSpace, AlignMode::kAuto}) {
    EXPECT_EQ(ParseAlignMode(AlignModeName(m)), m);
  }
}

}  // namespace
}  // namespace longalign
