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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "longalign/errors.h"
#include "longalign/synth.h"
#include "oracles.h"

namespace longalign {
namespace {

// Labels {_, a, b} with the blank at index 0.
LabelSet Abc() { return LabelSet(U"ab", 0); }

EmissionMatrix FromRows(const std::vector<std::vector<float>>& rows) {
  std::vector<float> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  const size_t labels = rows.empty() ? 3 : rows[0].size();
  return EmissionMatrix("t", rows.size(), labels, flat);
}

TEST(GreedyDecodeTest, EmptyMatrixGivesEmptyPath) {
  EXPECT_TRUE(GreedyDecode(EmissionMatrix("t", 0, 3, {})).empty());
}

TEST(GreedyDecodeTest, PicksArgmaxPerFrame) {
  const EmissionMatrix m = FromRows({{std::log(0.9f), std::log(0.1f)}});
  EXPECT_EQ(GreedyDecode(m), (GreedyPath{0}));
}

TEST(GreedyDecodeTest, TiesGoToLowestIndex) {
  const EmissionMatrix m = FromRows({{-1, -1, -1}, {-2, 0, 0}});
  EXPECT_EQ(GreedyDecode(m), (GreedyPath{0, 1}));
}

TEST(GreedyDecodeTest, MatchesLinearScanOnRandomMatrices) {
  std::mt19937_64 rng(11);
  std::normal_distribution<float> score(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t frames = rng() % 50;
    const size_t labels = 1 + rng() % 8;
    std::vector<float> flat(frames * labels);
    for (float& v : flat) v = std::round(score(rng));  // rounding forces ties
    const EmissionMatrix m("t", frames, labels, flat);
    const GreedyPath path = GreedyDecode(m);
    ASSERT_EQ(path.size(), frames);
    for (size_t t = 0; t < frames; ++t) {
      size_t best = 0;
      for (size_t k = 1; k < labels; ++k) {
        if (flat[t * labels + k] > flat[t * labels + best]) best = k;
      }
      EXPECT_EQ(path[t], best);
    }
  }
}

TEST(CollapseTest, MergesRunsAndDropsBlanks) {
  const PredictedText p = Collapse({1, 1, 0, 2}, Abc());
  EXPECT_EQ(p.chars, U"ab");
  EXPECT_EQ(p.spans, (std::vector<FrameSpan>{{0, 1}, {3, 3}}));
}

TEST(CollapseTest, AllBlank) {
  const PredictedText p = Collapse({0, 0, 0}, Abc());
  EXPECT_TRUE(p.chars.empty());
  EXPECT_TRUE(p.spans.empty());
}

TEST(CollapseTest, BlankSeparatesRepeatedCharacters) {
  const PredictedText p = Collapse({1, 0, 1, 1, 0, 2}, Abc());
  EXPECT_EQ(p.chars, U"aab");
  EXPECT_EQ(p.spans, (std::vector<FrameSpan>{{0, 0}, {2, 3}, {5, 5}}));
}

TEST(CollapseTest, BlankNotAtIndexZero) {
  const LabelSet labels(U"ab", 2);  // a=0, b=1, blank=2
  const PredictedText p = Collapse({0, 2, 1, 1}, labels);
  EXPECT_EQ(p.chars, U"ab");
  EXPECT_EQ(p.spans, (std::vector<FrameSpan>{{0, 0}, {2, 3}}));
}

TEST(CollapseTest, RejectsOutOfRangeLabel) {
  EXPECT_THROW(Collapse({7}, Abc()), InvariantError);
}

TEST(CollapseTest, AgreesWithRunLengthOracle) {
  const LabelSet labels = Abc();
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    GreedyPath path(rng() % 40);
    for (uint32_t& l : path) l = static_cast<uint32_t>(rng() % 3);
    const PredictedText p = Collapse(path, labels);
    const auto expected = oracles::NaiveCollapse(path, 0);
    ASSERT_EQ(p.chars.size(), expected.size());
    for (size_t i = 0; i < expected.size(); ++i) {
      EXPECT_EQ(p.chars[i], labels.CharAt(expected[i].label));
      EXPECT_EQ(p.spans[i], (FrameSpan{expected[i].first, expected[i].last}));
    }
    p.Validate(static_cast<int64_t>(path.size()));
  }
}

TEST(ExpandTest, MinimalExpansion) {
  EXPECT_EQ(Expand(U"ab", 2, Abc(), 0), (GreedyPath{1, 2}));
}

TEST(ExpandTest, RepeatedCharactersNeedBlank) {
  EXPECT_EQ(MinimumFrames(U"aa"), 3);
  EXPECT_EQ(Expand(U"aa", 3, Abc(), 0), (GreedyPath{1, 0, 1}));
  EXPECT_THROW(Expand(U"aa", 2, Abc(), 0), InvariantError);
}

TEST(ExpandTest, EmptyTextIsAllBlank) {
  EXPECT_EQ(Expand(U"", 4, Abc(), 5), (GreedyPath{0, 0, 0, 0}));
}

TEST(ExpandTest, UnknownCharacterRejected) {
  EXPECT_THROW(Expand(U"z", 3, Abc(), 0), InvariantError);
}

TEST(ExpandTest, DeterministicForSeed) {
  EXPECT_EQ(Expand(U"abba", 30, Abc(), 9), Expand(U"abba", 30, Abc(), 9));
}

TEST(ExpandTest, RoundTripThroughCollapse) {
  const LabelSet labels = DefaultSyntheticLabels();
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    std::u32string text(rng() % 30, U' ');
    for (char32_t& c : text) c = labels.characters()[rng() % 4];  // few letters, many repeats
    const int64_t frames = MinimumFrames(text) + static_cast<int64_t>(rng() % 50);
    const GreedyPath path = Expand(text, frames, labels, rng());
    ASSERT_EQ(static_cast<int64_t>(path.size()), frames);
    EXPECT_EQ(Collapse(path, labels).chars, text);
  }
}

}  // namespace
}  // namespace longalign
