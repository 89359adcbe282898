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

#include <algorithm>
#include <cmath>
#include <map>

#include "json.hpp"
#include "longalign/errors.h"
#include "longalign/formats.h"
#include "longalign/unicode.h"

namespace longalign {
namespace {

using json = nlohmann::json;

// Collapses whitespace runs to one space and trims both ends.
std::u32string SqueezeWhitespace(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char32_t c : text) {
    if (IsWhitespace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

ReferenceDocument FromLineTexts(std::vector<std::u32string> lines, const SegmenterConfig& config) {
  const size_t headers = CountHeaderLines(lines, config);
  std::u32string joined;
  for (size_t i = headers; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    if (!joined.empty()) joined.push_back(U' ');
    joined += lines[i];
  }
  return SegmentSentences(std::move(joined), config);
}

}  // namespace

void SegmenterConfig::Validate() const {
  if (eos_characters.empty()) throw InvariantError("EOS character set is empty");
  if (min_header_words < 1) throw InvariantError("min_header_words must be at least 1");
  if (max_header_lines < 0) throw InvariantError("max_header_lines must be non-negative");
  if (!(word_gap_ratio > 0)) throw InvariantError("word_gap_ratio must be positive");
}

bool SameLine(const OcrToken& a, const OcrToken& b) {
  const double ha = a.bbox.height;
  const double hb = b.bbox.height;
  return std::abs(a.bbox.center_y() - b.bbox.center_y()) < ha && std::abs(ha - hb) < 2 * ha;
}

std::vector<Line> GroupLines(std::span<const OcrToken> tokens) {
  std::vector<Line> lines;
  std::map<int, std::vector<size_t>> lines_by_page;
  for (const OcrToken& token : tokens) {
    std::vector<size_t>& page_lines = lines_by_page[token.page];
    bool placed = false;
    for (size_t idx : page_lines) {
      if (SameLine(lines[idx].tokens.front(), token)) {
        lines[idx].tokens.push_back(token);
        placed = true;
        break;
      }
    }
    if (!placed) {
      page_lines.push_back(lines.size());
      lines.push_back(Line{token.page, {token}});
    }
  }

  std::vector<double> mean_y(lines.size());
  for (size_t i = 0; i < lines.size(); ++i) {
    double sum = 0;
    for (const OcrToken& t : lines[i].tokens) sum += t.bbox.center_y();
    mean_y[i] = sum / static_cast<double>(lines[i].tokens.size());
    std::stable_sort(lines[i].tokens.begin(), lines[i].tokens.end(),
                     [](const OcrToken& a, const OcrToken& b) {
                       return a.bbox.center_x() < b.bbox.center_x();
                     });
  }
  std::vector<size_t> order(lines.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (lines[a].page != lines[b].page) return lines[a].page < lines[b].page;
    return mean_y[a] < mean_y[b];
  });
  std::vector<Line> sorted;
  sorted.reserve(lines.size());
  for (size_t i : order) sorted.push_back(std::move(lines[i]));
  return sorted;
}

std::u32string LineText(const Line& line, double word_gap_ratio) {
  std::u32string raw;
  const OcrToken* prev = nullptr;
  for (const OcrToken& token : line.tokens) {
    if (prev != nullptr) {
      const double gap = token.bbox.x - (prev->bbox.x + prev->bbox.width);
      if (gap > word_gap_ratio * prev->bbox.height) raw.push_back(U' ');
    }
    raw += token.text;
    prev = &token;
  }
  return SqueezeWhitespace(raw);
}

size_t CountWords(std::u32string_view text) {
  size_t words = 0;
  bool in_word = false;
  for (char32_t c : text) {
    const bool ws = IsWhitespace(c);
    if (!ws && !in_word) ++words;
    in_word = !ws;
  }
  return words;
}

size_t CountHeaderLines(std::span<const std::u32string> line_texts, const SegmenterConfig& config) {
  size_t count = 0;
  while (count < line_texts.size() && count < static_cast<size_t>(config.max_header_lines) &&
         CountWords(line_texts[count]) < static_cast<size_t>(config.min_header_words)) {
    ++count;
  }
  return count;
}

std::vector<Line> StripHeaders(std::vector<Line> lines, const SegmenterConfig& config) {
  std::vector<std::u32string> texts;
  texts.reserve(lines.size());
  for (const Line& line : lines) texts.push_back(LineText(line, config.word_gap_ratio));
  const size_t headers = CountHeaderLines(texts, config);
  lines.erase(lines.begin(), lines.begin() + static_cast<std::ptrdiff_t>(headers));
  return lines;
}

ReferenceDocument SegmentSentences(std::u32string text, const SegmenterConfig& config) {
  ReferenceDocument doc;
  const size_t n = text.size();
  size_t i = 0;
  while (i < n) {
    while (i < n && IsWhitespace(text[i])) ++i;
    if (i >= n) break;
    const size_t begin = i;
    while (i < n && !config.IsEos(text[i])) ++i;
    size_t end;
    if (i < n) {
      while (i + 1 < n && config.IsEos(text[i + 1])) ++i;
      end = i++;
    } else {
      end = n - 1;
      while (IsWhitespace(text[end])) --end;
    }
    doc.sentences.push_back({begin, end});
  }
  doc.text = std::move(text);
  return doc;
}

ReferenceDocument CleanOcrTokens(std::span<const OcrToken> tokens, const SegmenterConfig& config) {
  config.Validate();
  std::vector<std::u32string> texts;
  for (const Line& line : GroupLines(tokens)) {
    texts.push_back(NormalizeNfc(LineText(line, config.word_gap_ratio)));
  }
  return FromLineTexts(std::move(texts), config);
}

ReferenceDocument CleanPlainText(std::string_view utf8, const SegmenterConfig& config) {
  config.Validate();
  std::vector<std::u32string> texts;
  size_t pos = 0;
  while (pos < utf8.size()) {
    size_t nl = utf8.find('\n', pos);
    if (nl == std::string_view::npos) nl = utf8.size();
    std::u32string line = SqueezeWhitespace(Utf8ToCodePoints(utf8.substr(pos, nl - pos)));
    if (!line.empty()) texts.push_back(std::move(line));
    pos = nl + 1;
  }
  return FromLineTexts(std::move(texts), config);
}

std::vector<OcrToken> ParseOcrTokens(std::string_view text) {
  json pages;
  try {
    pages = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("OCR tokens: ") + e.what());
  }
  if (!pages.is_array()) throw FormatError("OCR tokens: expected an array of pages");
  std::vector<OcrToken> tokens;
  for (size_t page = 0; page < pages.size(); ++page) {
    if (!pages[page].is_array()) throw FormatError("OCR tokens: page must be an array");
    for (const json& t : pages[page]) {
      const std::string where = "OCR tokens page " + std::to_string(page) + ": ";
      if (!t.is_object() || !t.contains("text") || !t["text"].is_string() ||
          !t.contains("bbox") || !t["bbox"].is_array() || t["bbox"].size() != 4) {
        throw FormatError(where + "token needs \"text\" and a 4-element \"bbox\"");
      }
      for (const json& v : t["bbox"]) {
        if (!v.is_number()) throw FormatError(where + "bbox entries must be numbers");
      }
      OcrToken token{Utf8ToCodePoints(t["text"].get<std::string>()), static_cast<int>(page),
                     {t["bbox"][0].get<double>(), t["bbox"][1].get<double>(),
                      t["bbox"][2].get<double>(), t["bbox"][3].get<double>()}};
      if (token.text.empty()) throw FormatError(where + "empty token text");
      if (!(token.bbox.width > 0) || !(token.bbox.height > 0)) {
        throw FormatError(where + "bbox width and height must be positive");
      }
      tokens.push_back(std::move(token));
    }
  }
  return tokens;
}

std::vector<OcrToken> ReadOcrTokens(const std::filesystem::path& path) {
  return ParseOcrTokens(ReadFileToString(path));
}

std::string OcrTokensToJson(std::span<const OcrToken> tokens) {
  json pages = json::array();
  for (const OcrToken& t : tokens) {
    if (t.page < 0) throw InvariantError("negative page index");
    while (pages.size() <= static_cast<size_t>(t.page)) pages.push_back(json::array());
    pages[static_cast<size_t>(t.page)].push_back(
        {{"text", CodePointsToUtf8(t.text)},
         {"bbox", {t.bbox.x, t.bbox.y, t.bbox.width, t.bbox.height}}});
  }
  return pages.dump();
}

}  // namespace longalign
