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

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <set>
#include <sstream>

#include "json.hpp"
#include "longalign/errors.h"
#include "longalign/formats.h"
#include "longalign/unicode.h"

namespace longalign {
namespace {

namespace pt = boost::property_tree;

template <typename T>
T ParseNumber(const std::string& text, const std::string& key) {
  T value{};
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw FormatError("config key " + key + ": cannot parse \"" + text + "\"");
  }
  return value;
}

}  // namespace

AlignMode ParseAlignMode(std::string_view name) {
  if (name == "full") return AlignMode::kFull;
  if (name == "linear") return AlignMode::kLinearSpace;
  if (name == "auto") return AlignMode::kAuto;
  throw FormatError("unknown alignment mode \"" + std::string(name) + "\"");
}

std::string_view AlignModeName(AlignMode mode) {
  switch (mode) {
    case AlignMode::kFull:
      return "full";
    case AlignMode::kLinearSpace:
      return "linear";
    case AlignMode::kAuto:
      return "auto";
  }
  return "auto";
}

uint64_t ParseByteSize(std::string_view text) {
  if (text.empty()) throw FormatError("empty byte size");
  uint64_t multiplier = 1;
  switch (text.back()) {
    case 'K':
    case 'k':
      multiplier = uint64_t{1} << 10;
      break;
    case 'M':
    case 'm':
      multiplier = uint64_t{1} << 20;
      break;
    case 'G':
    case 'g':
      multiplier = uint64_t{1} << 30;
      break;
    default:
      break;
  }
  if (multiplier != 1) text.remove_suffix(1);
  const auto value = ParseNumber<uint64_t>(std::string(text), "memory_budget");
  if (value > UINT64_MAX / multiplier) throw FormatError("byte size overflows");
  return value * multiplier;
}

void RunConfig::Validate() const {
  aligner.Validate();
  filter.Validate();
  segmenter.Validate();
  if (!(frame_ms > 0)) throw InvariantError("frame_ms must be positive");
  if (!(pad_ms >= 0)) throw InvariantError("pad_ms must be non-negative");
  if (workers < 1) throw InvariantError("workers must be at least 1");
}

std::string RunConfig::ToJson() const {
  nlohmann::ordered_json j;
  j["align"] = {{"match", aligner.scores.match},
                {"mismatch", aligner.scores.mismatch},
                {"gap", aligner.scores.gap},
                {"mode", std::string(AlignModeName(aligner.mode))},
                {"memory_budget", aligner.memory_budget_bytes}};
  j["filter"] = {{"tau", filter.tau}};
  j["text"] = {{"eos_chars", CodePointsToUtf8(segmenter.eos_characters)},
               {"min_header_words", segmenter.min_header_words},
               {"max_header_lines", segmenter.max_header_lines},
               {"word_gap_ratio", segmenter.word_gap_ratio}};
  j["audio"] = {{"frame_ms", frame_ms}, {"pad_ms", pad_ms}};
  j["corpus"] = {{"workers", workers}};
  j["synth"] = {{"seed", seed}};
  return j.dump();
}

RunConfig ParseRunConfig(std::string_view ini) {
  pt::ptree tree;
  std::istringstream in{std::string(ini)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw FormatError(std::string("config: ") + e.what());
  }

  RunConfig config;
  for (const auto& [section, keys] : tree) {
    static const std::set<std::string> kSections{"align", "filter", "text",
                                                 "audio", "corpus", "synth"};
    if (keys.empty() && !keys.data().empty()) {
      throw FormatError("config key \"" + section + "\" must be inside a section");
    }
    if (!kSections.contains(section)) {
      throw FormatError("unknown config section [" + section + "]");
    }
    for (const auto& [key, node] : keys) {
      const std::string value = node.data();
      const std::string name = section + "." + key;
      if (name == "align.match") {
        config.aligner.scores.match = ParseNumber<int64_t>(value, name);
      } else if (name == "align.mismatch") {
        config.aligner.scores.mismatch = ParseNumber<int64_t>(value, name);
      } else if (name == "align.gap") {
        config.aligner.scores.gap = ParseNumber<int64_t>(value, name);
      } else if (name == "align.mode") {
        config.aligner.mode = ParseAlignMode(value);
      } else if (name == "align.memory_budget") {
        config.aligner.memory_budget_bytes = ParseByteSize(value);
      } else if (name == "filter.tau") {
        config.filter.tau = ParseNumber<double>(value, name);
      } else if (name == "text.eos_chars") {
        config.segmenter.eos_characters = Utf8ToCodePoints(value);
      } else if (name == "text.min_header_words") {
        config.segmenter.min_header_words = ParseNumber<int>(value, name);
      } else if (name == "text.max_header_lines") {
        config.segmenter.max_header_lines = ParseNumber<int>(value, name);
      } else if (name == "text.word_gap_ratio") {
        config.segmenter.word_gap_ratio = ParseNumber<double>(value, name);
      } else if (name == "audio.frame_ms") {
        config.frame_ms = ParseNumber<double>(value, name);
      } else if (name == "audio.pad_ms") {
        config.pad_ms = ParseNumber<double>(value, name);
      } else if (name == "corpus.workers") {
        config.workers = ParseNumber<int>(value, name);
      } else if (name == "synth.seed") {
        config.seed = ParseNumber<uint64_t>(value, name);
      } else {
        throw FormatError("unknown config key \"" + name + "\"");
      }
    }
  }
  try {
    config.Validate();
  } catch (const InvariantError& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  return config;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  return ParseRunConfig(ReadFileToString(path));
}

}  // namespace longalign
