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

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "longalign/errors.h"
#include "longalign/unicode.h"

namespace longalign {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr size_t kHeaderBytes = sizeof(kEmissionMagic) + 3 * sizeof(uint64_t);

void PutLe64(uint64_t v, char* out) {
  for (int i = 0; i < 8; ++i) out[i] = static_cast<char>((v >> (8 * i)) & 0xff);
}

void PutLe32(uint32_t v, char* out) {
  for (int i = 0; i < 4; ++i) out[i] = static_cast<char>((v >> (8 * i)) & 0xff);
}

uint64_t GetLe64(const char* in) {
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(static_cast<uint8_t>(in[i])) << (8 * i);
  return v;
}

uint32_t GetLe32(const char* in) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(static_cast<uint8_t>(in[i])) << (8 * i);
  return v;
}

uint32_t Crc32(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large payloads in chunks.
  size_t offset = 0;
  while (offset < bytes.size()) {
    const size_t n = std::min<size_t>(bytes.size() - offset, size_t{1} << 30);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data() + offset), static_cast<uInt>(n));
    offset += n;
  }
  return static_cast<uint32_t>(crc);
}

std::ifstream OpenForRead(const std::filesystem::path& path, std::ios::openmode mode = {}) {
  std::ifstream in(path, std::ios::in | mode);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream OpenForWrite(const std::filesystem::path& path, std::ios::openmode mode = {}) {
  std::ofstream out(path, std::ios::out | std::ios::trunc | mode);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

json ParseJson(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(what + ": " + e.what());
  }
}

std::vector<FrameSpan> ParseSpans(const json& spans) {
  if (!spans.is_array()) throw FormatError("\"spans\" must be an array");
  std::vector<FrameSpan> out;
  out.reserve(spans.size());
  for (const json& s : spans) {
    if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() ||
        !s[1].is_number_integer()) {
      throw FormatError("each span must be an [start, end] integer pair");
    }
    out.push_back({s[0].get<int64_t>(), s[1].get<int64_t>()});
  }
  return out;
}

}  // namespace

std::string ReadFileToString(const std::filesystem::path& path) {
  std::ifstream in = OpenForRead(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return buf.str();
}

void WriteStringToFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out = OpenForWrite(path, std::ios::binary);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("error writing " + path.string());
}

// ---------------------------------------------------------------------------
// Emission matrix

void WriteEmissionMatrix(const EmissionMatrix& matrix, std::ostream& out) {
  char header[kHeaderBytes];
  std::memcpy(header, kEmissionMagic, sizeof(kEmissionMagic));
  PutLe64(matrix.frame_count(), header + 6);
  PutLe64(matrix.label_count(), header + 14);
  PutLe64(static_cast<uint64_t>(std::llround(matrix.frame_duration_ms() * 1000.0)), header + 22);
  out.write(header, sizeof(header));

  std::string payload(matrix.scores().size() * 4, '\0');
  for (size_t i = 0; i < matrix.scores().size(); ++i) {
    PutLe32(std::bit_cast<uint32_t>(matrix.scores()[i]), payload.data() + 4 * i);
  }
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  char crc[4];
  PutLe32(Crc32(payload), crc);
  out.write(crc, sizeof(crc));
  if (!out) throw IoError("error writing emission matrix");
}

void WriteEmissionMatrix(const EmissionMatrix& matrix, const std::filesystem::path& path) {
  std::ofstream out = OpenForWrite(path, std::ios::binary);
  WriteEmissionMatrix(matrix, out);
}

EmissionMatrix ReadEmissionMatrix(std::istream& in, std::string audio_id) {
  char header[kHeaderBytes];
  if (!in.read(header, sizeof(header))) throw FormatError("emission header truncated");
  if (std::memcmp(header, kEmissionMagic, sizeof(kEmissionMagic)) != 0) {
    throw FormatError("bad emission magic");
  }
  const uint64_t frames = GetLe64(header + 6);
  const uint64_t labels = GetLe64(header + 14);
  const uint64_t micros = GetLe64(header + 22);
  if (micros == 0) throw FormatError("emission frame duration is zero");
  if (labels == 0 && frames != 0) throw FormatError("emission matrix has no labels");
  if (labels != 0 && frames > std::numeric_limits<uint64_t>::max() / 4 / labels) {
    throw FormatError("emission shape overflows");
  }

  const uint64_t payload_bytes = frames * labels * 4;
  std::string payload;
  // Grow incrementally so a corrupt header cannot force a huge allocation.
  constexpr uint64_t kChunk = uint64_t{1} << 24;
  while (payload.size() < payload_bytes) {
    const uint64_t n = std::min<uint64_t>(kChunk, payload_bytes - payload.size());
    const size_t old = payload.size();
    payload.resize(old + n);
    if (!in.read(payload.data() + old, static_cast<std::streamsize>(n))) {
      throw FormatError("emission payload truncated");
    }
  }
  char crc_bytes[4];
  if (!in.read(crc_bytes, sizeof(crc_bytes))) throw FormatError("emission checksum truncated");
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError("trailing bytes after emission checksum");
  }
  if (GetLe32(crc_bytes) != Crc32(payload)) throw FormatError("emission checksum mismatch");

  std::vector<float> scores(frames * labels);
  for (size_t i = 0; i < scores.size(); ++i) {
    scores[i] = std::bit_cast<float>(GetLe32(payload.data() + 4 * i));
    if (!std::isfinite(scores[i])) {
      throw FormatError("non-finite emission score at frame " + std::to_string(i / labels));
    }
  }
  return EmissionMatrix(std::move(audio_id), frames, labels, std::move(scores),
                        static_cast<double>(micros) / 1000.0);
}

EmissionMatrix ReadEmissionMatrix(const std::filesystem::path& path,
                                  std::optional<std::string> audio_id) {
  std::ifstream in = OpenForRead(path, std::ios::binary);
  try {
    return ReadEmissionMatrix(in, audio_id ? *audio_id : path.stem().string());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

bool IsEmissionFile(const std::filesystem::path& path) {
  std::ifstream in = OpenForRead(path, std::ios::binary);
  char magic[sizeof(kEmissionMagic)];
  if (!in.read(magic, sizeof(magic))) return false;
  return std::memcmp(magic, kEmissionMagic, sizeof(magic)) == 0;
}

// ---------------------------------------------------------------------------
// Label set

LabelSet ParseLabelSet(std::string_view contents) {
  std::vector<std::string_view> lines;
  size_t pos = 0;
  while (pos < contents.size()) {
    size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    std::string_view line = contents.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  if (lines.empty() || lines.front() != "<blank>") {
    throw FormatError("label file must start with <blank>");
  }
  std::u32string chars;
  for (size_t i = 1; i < lines.size(); ++i) {
    const std::u32string label = Utf8ToCodePoints(lines[i]);
    if (label.size() != 1) {
      throw FormatError("label on line " + std::to_string(i + 1) +
                        " is not a single character");
    }
    chars.push_back(label[0]);
  }
  try {
    return LabelSet(std::move(chars), 0);
  } catch (const InvariantError& e) {
    throw FormatError(std::string("label file: ") + e.what());
  }
}

LabelSet ReadLabelSet(const std::filesystem::path& path) {
  return ParseLabelSet(ReadFileToString(path));
}

void WriteLabelSet(const LabelSet& labels, const std::filesystem::path& path) {
  if (labels.blank_index() != 0) throw InvariantError("label files require blank at index 0");
  std::string out = "<blank>\n";
  for (char32_t c : labels.characters()) {
    out += CodePointsToUtf8(std::u32string_view(&c, 1));
    out += '\n';
  }
  WriteStringToFile(path, out);
}

// ---------------------------------------------------------------------------
// Manifest

std::string ManifestLine(const SegmentRecord& r) {
  ordered_json j;
  j["audio_id"] = r.audio_id;
  j["start_ms"] = r.start_ms;
  j["end_ms"] = r.end_ms;
  j["ref_text"] = r.ref_text;
  j["hyp_text"] = r.hyp_text;
  j["score"] = r.score;
  return j.dump();
}

void WriteManifest(const std::vector<SegmentRecord>& records, std::ostream& out) {
  for (const SegmentRecord& r : records) out << ManifestLine(r) << '\n';
  if (!out) throw IoError("error writing manifest");
}

void WriteManifest(const std::vector<SegmentRecord>& records, const std::filesystem::path& path) {
  std::ofstream out = OpenForWrite(path, std::ios::binary);
  WriteManifest(records, out);
}

std::vector<SegmentRecord> ReadManifest(std::istream& in) {
  static constexpr const char* kFields[] = {"audio_id", "start_ms", "end_ms",
                                            "ref_text", "hyp_text", "score"};
  std::vector<SegmentRecord> records;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fail = [&](const std::string& why) {
      return FormatError("manifest line " + std::to_string(line_no) + ": " + why);
    };
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw fail(e.what());
    }
    if (!j.is_object() || j.size() != std::size(kFields)) throw fail("expected 6 fields");
    for (const char* f : kFields) {
      if (!j.contains(f)) throw fail(std::string("missing field ") + f);
    }
    if (!j["audio_id"].is_string() || !j["ref_text"].is_string() ||
        !j["hyp_text"].is_string() || !j["start_ms"].is_number() ||
        !j["end_ms"].is_number() || !j["score"].is_number()) {
      throw fail("field has wrong type");
    }
    records.push_back({j["audio_id"].get<std::string>(), j["start_ms"].get<double>(),
                       j["end_ms"].get<double>(), j["ref_text"].get<std::string>(),
                       j["hyp_text"].get<std::string>(), j["score"].get<double>()});
  }
  if (in.bad()) throw IoError("error reading manifest");
  return records;
}

std::vector<SegmentRecord> ReadManifest(const std::filesystem::path& path) {
  std::ifstream in = OpenForRead(path, std::ios::binary);
  return ReadManifest(in);
}

// ---------------------------------------------------------------------------
// Pre-decoded input

PredecodedInput ParsePredecoded(std::string_view text) {
  const json j = ParseJson(text, "pre-decoded input");
  if (!j.is_object() || !j.contains("chars") || !j.contains("spans") || !j["chars"].is_string()) {
    throw FormatError("pre-decoded input needs \"chars\" and \"spans\"");
  }
  PredecodedInput out;
  out.text.chars = Utf8ToCodePoints(j["chars"].get<std::string>());
  out.text.spans = ParseSpans(j["spans"]);
  if (j.contains("frame_count")) {
    if (!j["frame_count"].is_number_integer()) throw FormatError("frame_count must be integer");
    out.frame_count = j["frame_count"].get<int64_t>();
  }
  if (j.contains("frame_duration_ms")) {
    if (!j["frame_duration_ms"].is_number()) throw FormatError("frame_duration_ms must be number");
    out.frame_duration_ms = j["frame_duration_ms"].get<double>();
    if (!(*out.frame_duration_ms > 0)) throw FormatError("frame_duration_ms must be positive");
  }
  try {
    out.text.Validate(out.frame_count);
  } catch (const InvariantError& e) {
    throw FormatError(std::string("pre-decoded input: ") + e.what());
  }
  return out;
}

PredecodedInput ReadPredecoded(const std::filesystem::path& path) {
  return ParsePredecoded(ReadFileToString(path));
}

std::string PredecodedToJson(const PredecodedInput& input) {
  ordered_json j;
  j["chars"] = CodePointsToUtf8(input.text.chars);
  j["spans"] = json::array();
  for (const FrameSpan& s : input.text.spans) j["spans"].push_back({s.start, s.end});
  if (input.frame_count) j["frame_count"] = *input.frame_count;
  if (input.frame_duration_ms) j["frame_duration_ms"] = *input.frame_duration_ms;
  return j.dump();
}

void WritePredecoded(const PredecodedInput& input, const std::filesystem::path& path) {
  WriteStringToFile(path, PredecodedToJson(input) + "\n");
}

// ---------------------------------------------------------------------------
// Reference document

ReferenceDocument ParseReferenceJson(std::string_view text) {
  const json j = ParseJson(text, "reference document");
  if (!j.is_object() || !j.contains("text") || !j["text"].is_string() ||
      !j.contains("sentences") || !j["sentences"].is_array()) {
    throw FormatError("reference document needs \"text\" and \"sentences\"");
  }
  ReferenceDocument doc;
  doc.text = Utf8ToCodePoints(j["text"].get<std::string>());
  for (const json& s : j["sentences"]) {
    if (!s.is_array() || s.size() != 2 || !s[0].is_number_unsigned() ||
        !s[1].is_number_unsigned()) {
      throw FormatError("each sentence must be a [begin, end] index pair");
    }
    doc.sentences.push_back({s[0].get<size_t>(), s[1].get<size_t>()});
  }
  try {
    doc.Validate();
  } catch (const InvariantError& e) {
    throw FormatError(std::string("reference document: ") + e.what());
  }
  return doc;
}

ReferenceDocument ReadReferenceJson(const std::filesystem::path& path) {
  return ParseReferenceJson(ReadFileToString(path));
}

std::string ReferenceToJson(const ReferenceDocument& doc) {
  ordered_json j;
  j["text"] = CodePointsToUtf8(doc.text);
  j["sentences"] = json::array();
  for (const CharRange& s : doc.sentences) j["sentences"].push_back({s.begin, s.end});
  return j.dump();
}

void WriteReferenceJson(const ReferenceDocument& doc, const std::filesystem::path& path) {
  WriteStringToFile(path, ReferenceToJson(doc) + "\n");
}

}  // namespace longalign
