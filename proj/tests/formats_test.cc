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

#include "longalign/formats.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

#include "longalign/errors.h"
#include "test_util.h"

namespace longalign {
namespace {

namespace fs = std::filesystem;

using testutil::TempDir;

std::string Serialize(const EmissionMatrix& m) {
  std::ostringstream out;
  WriteEmissionMatrix(m, out);
  return out.str();
}

EmissionMatrix Parse(const std::string& bytes) {
  std::istringstream in(bytes);
  return ReadEmissionMatrix(in, "x");
}

TEST(EmissionFormatTest, EmptyMatrix) {
  const EmissionMatrix m = Parse(Serialize(EmissionMatrix("x", 0, 3, {})));
  EXPECT_EQ(m.frame_count(), 0u);
  EXPECT_EQ(m.label_count(), 3u);
}

TEST(EmissionFormatTest, SmallMatrixEchoesValues) {
  const EmissionMatrix m = Parse(Serialize(EmissionMatrix("x", 2, 2, {0, -1, -1, 0})));
  ASSERT_EQ(m.frame_count(), 2u);
  EXPECT_EQ(m.row(0)[1], -1.0f);
  EXPECT_EQ(m.row(1)[1], 0.0f);
}

TEST(EmissionFormatTest, LayoutIsLittleEndianWithTrailingCrc) {
  const std::string bytes = Serialize(EmissionMatrix("x", 1, 2, {1.5f, -2.0f}, 20));
  ASSERT_EQ(bytes.size(), 6u + 3 * 8 + 2 * 4 + 4);
  EXPECT_EQ(bytes.substr(0, 6), std::string("EMIS1\0", 6));
  EXPECT_EQ(static_cast<uint8_t>(bytes[6]), 1);   // T
  EXPECT_EQ(static_cast<uint8_t>(bytes[14]), 2);  // L
  float first;
  std::memcpy(&first, bytes.data() + 30, 4);
  EXPECT_EQ(first, 1.5f);
}

TEST(EmissionFormatTest, RandomRoundTripIsBitwiseEqual) {
  std::mt19937_64 rng(41);
  std::normal_distribution<float> score(0, 10);
  for (int trial = 0; trial < 100; ++trial) {
    const size_t frames = rng() % 64;
    const size_t labels = 1 + rng() % 16;
    std::vector<float> flat(frames * labels);
    for (float& v : flat) v = score(rng);
    const EmissionMatrix m("x", frames, labels, flat, 10 + trial);
    const EmissionMatrix back = Parse(Serialize(m));
    ASSERT_EQ(back, m);
    ASSERT_EQ(std::memcmp(back.scores().data(), flat.data(), flat.size() * 4), 0);
  }
}

TEST(EmissionFormatTest, CorruptionDetected) {
  const std::string good = Serialize(EmissionMatrix("x", 2, 2, {0, -1, -1, 0}));
  std::string bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_THROW(Parse(bad_magic), FormatError);
  EXPECT_THROW(Parse(good.substr(0, good.size() - 1)), FormatError);
  EXPECT_THROW(Parse(good + "z"), FormatError);
  std::string flipped = good;
  flipped[32] ^= 0x01;
  EXPECT_THROW(Parse(flipped), FormatError);
}

TEST(EmissionFormatTest, NonFiniteRejected) {
  EXPECT_THROW(EmissionMatrix("x", 1, 1, {std::nanf("")}), InvariantError);
  EXPECT_THROW(EmissionMatrix("x", 1, 2, {0}), InvariantError);
}

TEST(EmissionFormatTest, FileRoundTripUsesStemAsId) {
  TempDir dir;
  const EmissionMatrix m("ignored", 3, 2, {0, 1, 2, 3, 4, 5});
  WriteEmissionMatrix(m, dir.path() / "bulletin7.emis");
  EXPECT_TRUE(IsEmissionFile(dir.path() / "bulletin7.emis"));
  const EmissionMatrix back = ReadEmissionMatrix(dir.path() / "bulletin7.emis");
  EXPECT_EQ(back.audio_id(), "bulletin7");
  EXPECT_THROW(ReadEmissionMatrix(dir.path() / "missing.emis"), IoError);
}

TEST(LabelSetTest, ParseAndLookup) {
  const LabelSet labels = ParseLabelSet("<blank>\na\nक\n \n");
  EXPECT_EQ(labels.size(), 4u);
  EXPECT_EQ(labels.blank_index(), 0u);
  EXPECT_EQ(labels.CharAt(2), U'क');
  EXPECT_EQ(labels.IndexOf(U' '), 3u);
  EXPECT_FALSE(labels.IndexOf(U'z').has_value());
  EXPECT_THROW(labels.CharAt(0), InvariantError);
}

TEST(LabelSetTest, Malformed) {
  EXPECT_THROW(ParseLabelSet("a\nb\n"), FormatError);
  EXPECT_THROW(ParseLabelSet("<blank>\nab\n"), FormatError);
  EXPECT_THROW(ParseLabelSet("<blank>\na\na\n"), Error);
}

TEST(LabelSetTest, FileRoundTrip) {
  TempDir dir;
  const LabelSet labels(U"ab ।", 0);
  WriteLabelSet(labels, dir.path() / "labels.txt");
  EXPECT_EQ(ReadLabelSet(dir.path() / "labels.txt").characters(), labels.characters());
}

TEST(ManifestTest, EmptyRoundTrip) {
  std::stringstream s;
  WriteManifest({}, s);
  EXPECT_EQ(s.str(), "");
  EXPECT_TRUE(ReadManifest(s).empty());
}

TEST(ManifestTest, OneRecordOneLine) {
  const SegmentRecord r{"a1", 0, 1000, "क ख।", "क ख।", 1.0};
  std::stringstream s;
  WriteManifest({r}, s);
  EXPECT_EQ(s.str(),
            "{\"audio_id\":\"a1\",\"start_ms\":0.0,\"end_ms\":1000.0,\"ref_text\":\"क ख।\","
            "\"hyp_text\":\"क ख।\",\"score\":1.0}\n");
  EXPECT_EQ(ReadManifest(s), std::vector<SegmentRecord>{r});
}

TEST(ManifestTest, RandomRoundTrip) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0, 1e6);
  std::vector<SegmentRecord> records;
  for (int i = 0; i < 1000; ++i) {
    std::string text;
    static const char* kPieces[] = {"क", "ख", "\"", "\\", " ", "\t", ".", "।"};
    for (size_t k = rng() % 12; k > 0; --k) text += kPieces[rng() % 8];
    records.push_back({"doc" + std::to_string(i), u(rng), u(rng), text, text + "x", u(rng) / 1e6});
  }
  std::stringstream s;
  WriteManifest(records, s);
  EXPECT_EQ(ReadManifest(s), records);
}

TEST(ManifestTest, Malformed) {
  std::istringstream missing("{\"audio_id\":\"a\"}\n");
  EXPECT_THROW(ReadManifest(missing), FormatError);
  std::istringstream extra(
      "{\"audio_id\":\"a\",\"start_ms\":0,\"end_ms\":1,\"ref_text\":\"\",\"hyp_text\":\"\","
      "\"score\":1,\"x\":2}\n");
  EXPECT_THROW(ReadManifest(extra), FormatError);
}

TEST(PredecodedTest, RoundTrip) {
  TempDir dir;
  PredecodedInput in{{U"ab", {{0, 1}, {3, 3}}}, 5, 20.0};
  WritePredecoded(in, dir.path() / "p.json");
  const PredecodedInput back = ReadPredecoded(dir.path() / "p.json");
  EXPECT_EQ(back.text, in.text);
  EXPECT_EQ(back.frame_count, 5);
  EXPECT_EQ(back.frame_duration_ms, 20.0);
}

TEST(PredecodedTest, SpansMustBeOrdered) {
  EXPECT_THROW(ParsePredecoded(R"({"chars":"ab","spans":[[0,2],[2,3]]})"), Error);
  EXPECT_THROW(ParsePredecoded(R"({"chars":"ab","spans":[[0,1]]})"), Error);
  EXPECT_THROW(ParsePredecoded(R"({"chars":"a"})"), FormatError);
}

TEST(ReferenceJsonTest, RoundTrip) {
  const ReferenceDocument doc{U"क ख। ग घ।", {{0, 3}, {5, 8}}};
  EXPECT_EQ(ParseReferenceJson(ReferenceToJson(doc)), doc);
  EXPECT_THROW(ParseReferenceJson(R"({"text":"ab","sentences":[[0,5]]})"), Error);
  EXPECT_THROW(ParseReferenceJson(R"({"text":"ab","sentences":[[1,1],[0,0]]})"), Error);
}

}  // namespace
}  // namespace longalign
