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

#include "longalign/textproc.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "longalign/errors.h"

namespace longalign {
namespace {

OcrToken Tok(std::u32string text, double cx, double cy, double h = 10, int page = 0) {
  const double w = 8;
  return {std::move(text), page, {cx - w / 2, cy - h / 2, w, h}};
}

std::u32string Texts(const Line& line) {
  std::u32string s;
  for (const OcrToken& t : line.tokens) s += t.text;
  return s;
}

TEST(SameLineTest, BothConditionsHold) {
  EXPECT_TRUE(SameLine(Tok(U"a", 0, 100, 10), Tok(U"b", 0, 105, 12)));
}

TEST(SameLineTest, Reflexive) {
  const OcrToken a = Tok(U"a", 3, 100, 10);
  EXPECT_TRUE(SameLine(a, a));
}

TEST(SameLineTest, TooFarApartVertically) {
  EXPECT_FALSE(SameLine(Tok(U"a", 0, 100, 10), Tok(U"b", 0, 115, 10)));
}

TEST(SameLineTest, HeightConditionCanBind) {
  // Centers close, but b is more than three times as tall as a.
  EXPECT_FALSE(SameLine(Tok(U"a", 0, 100, 10), Tok(U"b", 0, 100, 31)));
  EXPECT_TRUE(SameLine(Tok(U"a", 0, 100, 10), Tok(U"b", 0, 100, 29)));
}

TEST(SameLineTest, AnchoredOnFirstToken) {
  const OcrToken small = Tok(U"a", 0, 100, 4);
  const OcrToken big = Tok(U"b", 0, 106, 10);
  EXPECT_FALSE(SameLine(small, big));
  EXPECT_TRUE(SameLine(big, small));
}

TEST(GroupLinesTest, ShuffledLineComesOutLeftToRight) {
  std::vector<OcrToken> tokens;
  const std::u32string word = U"abcdefgh";
  for (size_t i = 0; i < word.size(); ++i) {
    tokens.push_back(Tok(std::u32string(1, word[i]), 10.0 * i, 50 + (i % 3)));
  }
  std::mt19937 rng(5);
  std::shuffle(tokens.begin(), tokens.end(), rng);
  const auto lines = GroupLines(tokens);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(Texts(lines[0]), word);
}

TEST(GroupLinesTest, LinesOrderedTopToBottom) {
  const std::vector<OcrToken> tokens{Tok(U"c", 0, 200), Tok(U"a", 0, 100), Tok(U"d", 10, 200),
                                     Tok(U"b", 10, 100)};
  const auto lines = GroupLines(tokens);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(Texts(lines[0]), U"ab");
  EXPECT_EQ(Texts(lines[1]), U"cd");
}

TEST(GroupLinesTest, PagesKeptApart) {
  const std::vector<OcrToken> tokens{Tok(U"b", 0, 100, 10, 1), Tok(U"a", 0, 100, 10, 0)};
  const auto lines = GroupLines(tokens);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0].page, 0);
  EXPECT_EQ(lines[1].page, 1);
}

TEST(GroupLinesTest, TwoColumnPageReadColumnMajor) {
  // Layout: 6 rows, each with a left and a right cell of 3 characters.
  // A faulty reader emits the left column top to bottom, then the right.
  std::vector<OcrToken> tokens;
  std::vector<std::u32string> expected_rows;
  char32_t next = U'A';
  std::vector<std::vector<OcrToken>> columns(2);
  for (int row = 0; row < 6; ++row) {
    std::u32string row_text;
    for (int col = 0; col < 2; ++col) {
      for (int k = 0; k < 3; ++k) {
        const std::u32string ch(1, next++);
        row_text += ch;
        columns[col].push_back(Tok(ch, 200.0 * col + 10.0 * k, 30.0 * row + 15));
      }
    }
    expected_rows.push_back(row_text);
  }
  for (const auto& column : columns) tokens.insert(tokens.end(), column.begin(), column.end());
  const auto lines = GroupLines(tokens);
  ASSERT_EQ(lines.size(), expected_rows.size());
  for (size_t i = 0; i < lines.size(); ++i) EXPECT_EQ(Texts(lines[i]), expected_rows[i]);
}

TEST(GroupLinesTest, IsPermutation) {
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> pos(0, 500);
  std::vector<OcrToken> tokens;
  for (int i = 0; i < 300; ++i) {
    tokens.push_back(Tok(std::u32string(1, U'a' + i % 26), pos(rng), pos(rng), 5 + i % 7, i % 2));
  }
  std::vector<OcrToken> regrouped;
  for (const Line& line : GroupLines(tokens)) {
    regrouped.insert(regrouped.end(), line.tokens.begin(), line.tokens.end());
  }
  auto key = [](const OcrToken& a, const OcrToken& b) {
    return std::tie(a.page, a.bbox.x, a.bbox.y, a.text) < std::tie(b.page, b.bbox.x, b.bbox.y, b.text);
  };
  std::sort(tokens.begin(), tokens.end(), key);
  std::sort(regrouped.begin(), regrouped.end(), key);
  EXPECT_EQ(tokens, regrouped);
}

TEST(LineTextTest, WideGapsBecomeSpaces) {
  Line line{0, {Tok(U"a", 0, 0), Tok(U"b", 8, 0), Tok(U"c", 30, 0), Tok(U" ", 38, 0),
                Tok(U"d", 46, 0)}};
  EXPECT_EQ(LineText(line, 0.5), U"ab c d");
}

std::vector<std::u32string> Lines(std::initializer_list<std::u32string> l) { return l; }

TEST(HeaderTest, ShortFirstLineRemoved) {
  const SegmenterConfig cfg;
  const auto lines = Lines({U"REGIONAL NEWS 0815",
                            U"one two three four five six seven eight nine ten eleven twelve"});
  EXPECT_EQ(CountHeaderLines(lines, cfg), 1u);
}

TEST(HeaderTest, LongFirstLineKept) {
  const SegmenterConfig cfg;
  EXPECT_EQ(CountHeaderLines(Lines({U"a b c d e f g h", U"x"}), cfg), 0u);
}

TEST(HeaderTest, CappedAtMaxHeaderLines) {
  const SegmenterConfig cfg;
  EXPECT_EQ(CountHeaderLines(Lines({U"a b", U"c d", U"e f", U"one two three four five"}), cfg), 3u);
  EXPECT_EQ(CountHeaderLines(Lines({U"a b", U"c d", U"e f", U"g h", U"one two three four five"}),
                             cfg),
            3u);
}

TEST(HeaderTest, StopsAtFirstBodyLine) {
  const SegmenterConfig cfg;
  EXPECT_EQ(CountHeaderLines(Lines({U"a", U"one two three four five", U"b"}), cfg), 1u);
}

TEST(HeaderTest, StripHeadersOnLines) {
  const SegmenterConfig cfg;
  std::vector<Line> lines{{0, {Tok(U"H", 0, 0)}},
                          {0, {Tok(U"a", 0, 20), Tok(U"b", 20, 20), Tok(U"c", 40, 20),
                               Tok(U"d", 60, 20), Tok(U"e", 80, 20)}}};
  const auto kept = StripHeaders(lines, cfg);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(Texts(kept[0]), U"abcde");
}

TEST(SegmentSentencesTest, TwoDandaSentences) {
  // Code point offsets; each Devanagari letter here is one code point.
  const ReferenceDocument doc = SegmentSentences(U"क ख। ग घ।", SegmenterConfig{});
  EXPECT_EQ(doc.sentences, (std::vector<CharRange>{{0, 3}, {5, 8}}));
  EXPECT_EQ(doc.sentence(0), U"क ख।");
  EXPECT_EQ(doc.sentence(1), U"ग घ।");
}

TEST(SegmentSentencesTest, NoEosGivesOneTrimmedSentence) {
  const ReferenceDocument doc = SegmentSentences(U"  some text here  ", SegmenterConfig{});
  ASSERT_EQ(doc.sentences.size(), 1u);
  EXPECT_EQ(doc.sentence(0), U"some text here");
}

TEST(SegmentSentencesTest, MixedEosSet) {
  const ReferenceDocument doc = SegmentSentences(U"a. b? c!", SegmenterConfig{});
  EXPECT_EQ(doc.sentences, (std::vector<CharRange>{{0, 1}, {3, 4}, {6, 7}}));
}

TEST(SegmentSentencesTest, EosRunClosesOneSentence) {
  const ReferenceDocument doc = SegmentSentences(U"wait?! ok।।", SegmenterConfig{});
  EXPECT_EQ(doc.sentences, (std::vector<CharRange>{{0, 5}, {7, 10}}));
}

TEST(SegmentSentencesTest, EmptyAndWhitespaceOnly) {
  EXPECT_TRUE(SegmentSentences(U"", SegmenterConfig{}).sentences.empty());
  EXPECT_TRUE(SegmentSentences(U"   ", SegmenterConfig{}).sentences.empty());
}

TEST(SegmentSentencesTest, CoversEveryNonWhitespaceCharacterOnce) {
  std::mt19937 rng(7);
  const std::u32string alphabet = U"ab .।?\n";
  const SegmenterConfig cfg;
  for (int trial = 0; trial < 300; ++trial) {
    std::u32string text(rng() % 40, U' ');
    for (char32_t& c : text) c = alphabet[rng() % alphabet.size()];
    const ReferenceDocument doc = SegmentSentences(text, cfg);
    doc.Validate();
    std::vector<int> covered(text.size(), 0);
    for (const CharRange& s : doc.sentences) {
      for (size_t i = s.begin; i <= s.end; ++i) ++covered[i];
    }
    for (size_t i = 0; i < text.size(); ++i) {
      const bool ws = text[i] == U' ' || text[i] == U'\n';
      EXPECT_EQ(covered[i], ws ? covered[i] : 1) << "index " << i;
      EXPECT_LE(covered[i], 1);
    }
  }
}

TEST(CleanTest, PlainTextStripsHeaderAndSegments) {
  const ReferenceDocument doc = CleanPlainText(
      "NEWS 0815\n\nकल बारिश होगी और ठंड बढ़ेगी। सब\nघर पर रहें।\n", SegmenterConfig{});
  ASSERT_EQ(doc.sentences.size(), 2u);
  EXPECT_EQ(doc.sentence(1), U"सब घर पर रहें।");
}

TEST(CleanTest, OcrTokensEndToEnd) {
  std::vector<OcrToken> tokens;
  // Header line "AB" at y=10, body "a b c d e." at y=40 (wide gaps = spaces).
  tokens.push_back(Tok(U"A", 0, 10));
  tokens.push_back(Tok(U"B", 9, 10));
  const std::u32string body = U"abcde.";
  for (size_t i = 0; i < body.size(); ++i) {
    tokens.push_back(Tok(std::u32string(1, body[i]), 20.0 * i, 40));
  }
  const ReferenceDocument doc = CleanOcrTokens(tokens, SegmenterConfig{});
  EXPECT_EQ(doc.text, U"a b c d e .");
  ASSERT_EQ(doc.sentences.size(), 1u);
}

TEST(OcrJsonTest, RoundTrip) {
  const std::vector<OcrToken> tokens{Tok(U"क", 5, 5, 10, 0), Tok(U"x", 7, 9, 12, 2)};
  EXPECT_EQ(ParseOcrTokens(OcrTokensToJson(tokens)), tokens);
}

TEST(OcrJsonTest, Malformed) {
  EXPECT_THROW(ParseOcrTokens("{}"), FormatError);
  EXPECT_THROW(ParseOcrTokens("[[{\"text\":\"a\"}]]"), FormatError);
  EXPECT_THROW(ParseOcrTokens("[[{\"text\":\"a\",\"bbox\":[0,0,0,1]}]]"), FormatError);
  EXPECT_THROW(ParseOcrTokens("[[{\"text\":\"\",\"bbox\":[0,0,1,1]}]]"), FormatError);
}

TEST(SegmenterConfigTest, Validation) {
  SegmenterConfig cfg;
  cfg.eos_characters.clear();
  EXPECT_THROW(cfg.Validate(), InvariantError);
}

}  // namespace
}  // namespace longalign
