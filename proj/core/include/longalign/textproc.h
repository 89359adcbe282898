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

// Reference text extraction from character-level OCR output: line grouping
// by bounding boxes, reading order, header removal and sentence
// segmentation.

#ifndef LONGALIGN_TEXTPROC_H_
#define LONGALIGN_TEXTPROC_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "longalign/types.h"

namespace longalign {

struct BoundingBox {
  double x = 0;
  double y = 0;  // top edge; y grows downward
  double width = 0;
  double height = 0;

  double center_x() const { return x + width / 2; }
  double center_y() const { return y + height / 2; }
  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct OcrToken {
  std::u32string text;  // one character
  int page = 0;
  BoundingBox bbox;
  friend bool operator==(const OcrToken&, const OcrToken&) = default;
};

struct Line {
  int page = 0;
  std::vector<OcrToken> tokens;  // left to right
};

struct SegmenterConfig {
  std::u32string eos_characters = U"।॥.?!۔";
  int min_header_words = 5;
  int max_header_lines = 3;
  // Horizontal gap between neighbouring tokens, as a fraction of the left
  // token's height, above which a word break is inserted.
  double word_gap_ratio = 0.5;

  void Validate() const;
  bool IsEos(char32_t c) const { return eos_characters.find(c) != std::u32string::npos; }
};

// Token b sits on token a's line when
//   |center_y(a) - center_y(b)| < h(a)  and  |h(a) - h(b)| < 2 h(a).
// Anchored on a, so the relation is reflexive but not symmetric.
bool SameLine(const OcrToken& a, const OcrToken& b);

// Greedy grouping in input order: a token joins the first line on its page
// whose first token it shares a line with, otherwise it starts a new line.
// Lines are returned sorted by page then mean center_y, tokens by center_x.
std::vector<Line> GroupLines(std::span<const OcrToken> tokens);

// Text of a line. Whitespace tokens and wide horizontal gaps become single
// spaces; the result is trimmed.
std::u32string LineText(const Line& line, double word_gap_ratio);

size_t CountWords(std::u32string_view text);

// Number of leading lines that look like headers: fewer than
// min_header_words words, at most max_header_lines of them, stopping at the
// first line with enough words.
size_t CountHeaderLines(std::span<const std::u32string> line_texts, const SegmenterConfig& config);

std::vector<Line> StripHeaders(std::vector<Line> lines, const SegmenterConfig& config);

// Splits text into sentences ending at EOS characters. A run of consecutive
// EOS characters closes one sentence. Whitespace between sentences belongs
// to none. Text after the last EOS forms a final sentence.
ReferenceDocument SegmentSentences(std::u32string text, const SegmenterConfig& config);

// OCR pages -> lines -> header removal -> joined text -> sentences.
ReferenceDocument CleanOcrTokens(std::span<const OcrToken> tokens, const SegmenterConfig& config);

// Plain text transcript: non-empty lines, header removal, sentences.
ReferenceDocument CleanPlainText(std::string_view utf8, const SegmenterConfig& config);

// OCR token JSON: an array of pages, each an array of
// {"text": "<char>", "bbox": [x, y, w, h]}.
std::vector<OcrToken> ParseOcrTokens(std::string_view json);
std::vector<OcrToken> ReadOcrTokens(const std::filesystem::path& path);
std::string OcrTokensToJson(std::span<const OcrToken> tokens);

}  // namespace longalign

#endif  // LONGALIGN_TEXTPROC_H_
