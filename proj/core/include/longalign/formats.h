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

#ifndef LONGALIGN_FORMATS_H_
#define LONGALIGN_FORMATS_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "longalign/types.h"

namespace longalign {

// Emission matrix binary layout (all integers little-endian):
//
//   "EMIS1\0"                      6 bytes
//   u64 frame_count                T
//   u64 label_count                |L'|
//   u64 frame_duration_micros
//   f32[T * |L'|]                  row-major scores
//   u32 crc32                      over the f32 payload bytes
//
// The audio id is not stored; readers take it from the caller.
inline constexpr char kEmissionMagic[6] = {'E', 'M', 'I', 'S', '1', '\0'};

void WriteEmissionMatrix(const EmissionMatrix& matrix, std::ostream& out);
void WriteEmissionMatrix(const EmissionMatrix& matrix, const std::filesystem::path& path);

// Throws FormatError on a bad magic, truncated or oversized payload,
// checksum mismatch, or non-finite score.
EmissionMatrix ReadEmissionMatrix(std::istream& in, std::string audio_id);
EmissionMatrix ReadEmissionMatrix(const std::filesystem::path& path,
                                  std::optional<std::string> audio_id = std::nullopt);

// True when the file starts with the emission magic.
bool IsEmissionFile(const std::filesystem::path& path);

// Label set text file: UTF-8, one label per line, first line "<blank>".
LabelSet ReadLabelSet(const std::filesystem::path& path);
LabelSet ParseLabelSet(std::string_view contents);
void WriteLabelSet(const LabelSet& labels, const std::filesystem::path& path);

// Manifest JSON Lines. Field order is fixed:
// audio_id, start_ms, end_ms, ref_text, hyp_text, score.
std::string ManifestLine(const SegmentRecord& record);
void WriteManifest(const std::vector<SegmentRecord>& records, std::ostream& out);
void WriteManifest(const std::vector<SegmentRecord>& records, const std::filesystem::path& path);
// Throws FormatError naming the 1-based line number of a malformed line.
std::vector<SegmentRecord> ReadManifest(std::istream& in);
std::vector<SegmentRecord> ReadManifest(const std::filesystem::path& path);

// Pre-decoded CTC output: {"chars": "...", "spans": [[start, end], ...]}
// with optional "frame_count" and "frame_duration_ms".
struct PredecodedInput {
  PredictedText text;
  std::optional<int64_t> frame_count;
  std::optional<double> frame_duration_ms;
};
PredecodedInput ReadPredecoded(const std::filesystem::path& path);
PredecodedInput ParsePredecoded(std::string_view json);
std::string PredecodedToJson(const PredecodedInput& input);
void WritePredecoded(const PredecodedInput& input, const std::filesystem::path& path);

// Cleaned reference: {"text": "...", "sentences": [[begin, end], ...]}
// with inclusive code point indices.
ReferenceDocument ReadReferenceJson(const std::filesystem::path& path);
ReferenceDocument ParseReferenceJson(std::string_view json);
std::string ReferenceToJson(const ReferenceDocument& doc);
void WriteReferenceJson(const ReferenceDocument& doc, const std::filesystem::path& path);

std::string ReadFileToString(const std::filesystem::path& path);
void WriteStringToFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace longalign

#endif  // LONGALIGN_FORMATS_H_
