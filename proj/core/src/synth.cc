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

#include "longalign/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <set>

#include "json.hpp"
#include "longalign/errors.h"
#include "longalign/formats.h"
#include "longalign/textproc.h"
#include "longalign/unicode.h"

namespace longalign {
namespace {

using json = nlohmann::json;

constexpr float kOffScore = -10.0f;
constexpr int kMinWords = 4;
constexpr int kMaxWords = 9;
constexpr int kMinWordLength = 2;
constexpr int kMaxWordLength = 6;
constexpr int kMinCharFrames = 1;
constexpr int kMaxCharFrames = 5;
constexpr int kMaxBlankFrames = 3;

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void CheckRate(double rate, const char* name) {
  if (!(rate >= 0 && rate < 1)) throw InvariantError(std::string(name) + " must lie in [0, 1)");
}

void CheckRange(const LengthRange& r, const char* name) {
  if (r.min < 0 || r.max < r.min) throw InvariantError(std::string(name) + " range is invalid");
}

// A unit of the spoken stream: one character, or a block of noise frames.
struct Unit {
  bool noise = false;
  char32_t c = 0;
  int64_t noise_frames = 0;
  int sentence = -1;    // spoken sentence this character belongs to
  bool anchor = false;  // derived from a transcript character (not inserted)
};

class Generator {
 public:
  Generator(const FaultModel& fm, const LabelSet& labels)
      : fm_(fm), labels_(labels), rng_(fm.seed) {
    const SegmenterConfig segmenter;
    for (char32_t c : labels.characters()) {
      if (IsWhitespace(c)) {
        if (c == U' ') space_ = c;
      } else if (segmenter.IsEos(c)) {
        if (!eos_) eos_ = c;
      } else {
        word_chars_.push_back(c);
      }
    }
    if (labels.characters().size() < 4) {
      throw InvariantError("synthetic generation needs at least 4 non-blank labels");
    }
    if (word_chars_.size() < 2) {
      throw InvariantError("synthetic generation needs at least 2 word characters");
    }
  }

  SyntheticDocument Run(const std::string& audio_id, int n_sentences, double frame_ms);

 private:
  int64_t Uniform(int64_t lo, int64_t hi) {
    return std::uniform_int_distribution<int64_t>(lo, hi)(rng_);
  }
  bool Chance(double p) { return p > 0 && std::uniform_real_distribution<double>(0, 1)(rng_) < p; }
  char32_t WordChar() { return word_chars_[static_cast<size_t>(Uniform(0, word_chars_.size() - 1))]; }
  char32_t OtherWordChar(char32_t c) {
    char32_t out;
    do out = WordChar();
    while (out == c);
    return out;
  }
  std::u32string Word() {
    std::u32string w;
    const int64_t len = Uniform(kMinWordLength, kMaxWordLength);
    for (int64_t i = 0; i < len; ++i) w.push_back(WordChar());
    return w;
  }
  std::vector<std::u32string> Words(int lo, int hi) {
    std::vector<std::u32string> words(static_cast<size_t>(Uniform(lo, hi)));
    for (auto& w : words) w = Word();
    return words;
  }
  std::u32string Join(const std::vector<std::u32string>& words) const {
    std::u32string out;
    for (size_t i = 0; i < words.size(); ++i) {
      if (i > 0 && space_) out.push_back(*space_);
      out += words[i];
    }
    if (eos_) out.push_back(*eos_);
    return out;
  }
  uint32_t Label(char32_t c) const { return static_cast<uint32_t>(*labels_.IndexOf(c)); }

  const FaultModel& fm_;
  const LabelSet& labels_;
  std::mt19937_64 rng_;
  std::vector<char32_t> word_chars_;
  std::optional<char32_t> space_;
  std::optional<char32_t> eos_;
};

SyntheticDocument Generator::Run(const std::string& audio_id, int n_sentences, double frame_ms) {
  if (n_sentences < 0) throw InvariantError("sentence count must be non-negative");

  ReferenceDocument reference;
  GroundTruth truth;
  truth.audio_id = audio_id;
  truth.frame_duration_ms = frame_ms;
  // Ground-truth index for each spoken sentence.
  std::vector<size_t> spoken_truth_index;
  std::vector<std::vector<Unit>> spoken_units;

  const auto append_reference = [&](const std::u32string& text) {
    if (!reference.text.empty()) reference.text.push_back(space_.value_or(U' '));
    const size_t begin = reference.text.size();
    reference.text += text;
    reference.sentences.push_back({begin, reference.text.size() - 1});
  };

  for (int s = 0; s < n_sentences; ++s) {
    if (Chance(fm_.extraneous_header_prob)) {
      const std::u32string header = Join(Words(2, 3));
      append_reference(header);
      truth.sentences.push_back({header, std::nullopt, true});
    }

    const std::vector<std::u32string> words = Words(kMinWords, kMaxWords);
    bool corrupted = false;

    // Transcript side: OCR may glue neighbouring words together.
    std::u32string ref_text;
    for (size_t i = 0; i < words.size(); ++i) {
      if (i > 0 && space_) {
        if (Chance(fm_.ocr_join_rate)) {
          corrupted = true;
        } else {
          ref_text.push_back(*space_);
        }
      }
      ref_text += words[i];
    }
    if (eos_) ref_text.push_back(*eos_);

    // Spoken side: the reader may skip or add a word.
    std::vector<std::u32string> spoken_words = words;
    if (spoken_words.size() > 1 && Chance(fm_.skipped_word_prob)) {
      spoken_words.erase(spoken_words.begin() + Uniform(0, spoken_words.size() - 1));
      corrupted = true;
    }
    if (Chance(fm_.extra_word_prob)) {
      spoken_words.insert(spoken_words.begin() + Uniform(0, spoken_words.size()), Word());
      corrupted = true;
    }

    // ASR noise on the spoken characters.
    const int spoken_index = static_cast<int>(spoken_units.size());
    std::vector<Unit> units;
    for (char32_t c : Join(spoken_words)) {
      if (Chance(fm_.del_rate)) continue;
      units.push_back({false, Chance(fm_.sub_rate) ? OtherWordChar(c) : c, 0, spoken_index, true});
      if (Chance(fm_.ins_rate)) units.push_back({false, WordChar(), 0, spoken_index, false});
    }

    append_reference(ref_text);
    truth.sentences.push_back({ref_text, std::nullopt, corrupted});
    spoken_truth_index.push_back(truth.sentences.size() - 1);
    spoken_units.push_back(std::move(units));
  }

  // Untranscribed audio between spoken sentences.
  const size_t gaps = spoken_units.empty() ? 0 : spoken_units.size() - 1;
  std::vector<char> noise_after(gaps, 0);
  for (size_t g = 0; g < gaps; ++g) noise_after[g] = Chance(fm_.interior_untranscribed_prob);
  for (int k = 0; k < fm_.interior_untranscribed_count; ++k) {
    std::vector<size_t> free_gaps;
    for (size_t g = 0; g < gaps; ++g) {
      if (!noise_after[g]) free_gaps.push_back(g);
    }
    if (free_gaps.empty()) break;
    noise_after[free_gaps[static_cast<size_t>(Uniform(0, free_gaps.size() - 1))]] = 1;
  }

  std::vector<Unit> stream;
  const auto push_noise = [&](const LengthRange& range) {
    const int64_t frames = Uniform(range.min, range.max);
    if (frames > 0) stream.push_back({true, 0, frames, -1, false});
  };
  push_noise(fm_.untranscribed_prefix_frames);
  for (size_t k = 0; k < spoken_units.size(); ++k) {
    stream.insert(stream.end(), spoken_units[k].begin(), spoken_units[k].end());
    if (k + 1 < spoken_units.size()) {
      if (noise_after[k]) push_noise(fm_.interior_untranscribed_frames);
      if (space_) stream.push_back({false, *space_, 0, -1, false});
    }
  }
  push_noise(fm_.untranscribed_suffix_frames);

  // Realize frames.
  const auto blank = static_cast<uint32_t>(labels_.blank_index());
  GreedyPath path;
  std::vector<std::optional<FrameSpan>> sentence_frames(spoken_units.size());
  std::u32string spoken;
  for (const Unit& unit : stream) {
    if (unit.noise) {
      const int64_t start = static_cast<int64_t>(path.size());
      for (int64_t f = 0; f < unit.noise_frames; ++f) {
        uint32_t label = Label(WordChar());
        // Keep the first noise frame from merging into the preceding run.
        while (f == 0 && !path.empty() && path.back() == label) label = Label(WordChar());
        path.push_back(label);
      }
      truth.untranscribed.push_back({start, static_cast<int64_t>(path.size()) - 1});
      continue;
    }
    const uint32_t label = Label(unit.c);
    int64_t blanks = Uniform(0, kMaxBlankFrames);
    if (blanks == 0 && !path.empty() && path.back() == label) blanks = 1;
    path.insert(path.end(), static_cast<size_t>(blanks), blank);
    const int64_t start = static_cast<int64_t>(path.size());
    path.insert(path.end(), static_cast<size_t>(Uniform(kMinCharFrames, kMaxCharFrames)), label);
    const int64_t end = static_cast<int64_t>(path.size()) - 1;
    spoken.push_back(unit.c);
    if (unit.anchor) {
      auto& frames = sentence_frames[static_cast<size_t>(unit.sentence)];
      if (!frames) frames = FrameSpan{start, end};
      frames->end = end;
    }
  }
  path.insert(path.end(), static_cast<size_t>(Uniform(0, kMaxBlankFrames)), blank);

  for (size_t k = 0; k < spoken_units.size(); ++k) {
    GroundTruthSentence& gt = truth.sentences[spoken_truth_index[k]];
    gt.frames = sentence_frames[k];
    if (!gt.frames) gt.corrupted = true;
  }
  truth.frame_count = static_cast<int64_t>(path.size());

  std::vector<float> scores(path.size() * labels_.size(), kOffScore);
  for (size_t t = 0; t < path.size(); ++t) scores[t * labels_.size() + path[t]] = 0.0f;
  EmissionMatrix emissions(audio_id, path.size(), labels_.size(), std::move(scores), frame_ms);

  return {std::move(emissions), std::move(reference), std::move(truth), std::move(spoken)};
}

int64_t BruteForce(std::u32string_view r, std::u32string_view p, const ScoreParams& s) {
  if (r.empty()) return static_cast<int64_t>(p.size()) * s.gap;
  if (p.empty()) return static_cast<int64_t>(r.size()) * s.gap;
  const int64_t diag = BruteForce(r.substr(1), p.substr(1), s) + s.Pair(r[0], p[0]);
  const int64_t gap_in_p = BruteForce(r.substr(1), p, s) + s.gap;
  const int64_t gap_in_r = BruteForce(r, p.substr(1), s) + s.gap;
  return std::max({diag, gap_in_p, gap_in_r});
}

json SpanJson(const std::optional<FrameSpan>& span) {
  if (!span) return nullptr;
  return json::array({span->start, span->end});
}

FrameSpan ParseSpanJson(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw FormatError("ground truth: frame span must be an integer pair");
  }
  return {j[0].get<int64_t>(), j[1].get<int64_t>()};
}

}  // namespace

void FaultModel::Validate() const {
  CheckRate(sub_rate, "sub_rate");
  CheckRate(ins_rate, "ins_rate");
  CheckRate(del_rate, "del_rate");
  CheckRate(ocr_join_rate, "ocr_join_rate");
  CheckRate(interior_untranscribed_prob, "interior_untranscribed_prob");
  CheckRate(extraneous_header_prob, "extraneous_header_prob");
  CheckRate(skipped_word_prob, "skipped_word_prob");
  CheckRate(extra_word_prob, "extra_word_prob");
  CheckRange(untranscribed_prefix_frames, "untranscribed_prefix_frames");
  CheckRange(untranscribed_suffix_frames, "untranscribed_suffix_frames");
  CheckRange(interior_untranscribed_frames, "interior_untranscribed_frames");
  if (interior_untranscribed_count < 0) {
    throw InvariantError("interior_untranscribed_count must be non-negative");
  }
}

LabelSet DefaultSyntheticLabels() {
  std::u32string chars = U" ।";
  for (char32_t c = 0x0915; c <= 0x0939; ++c) {
    // Skip the nukta-composed letters so every label is its own NFC form.
    if (c == 0x0929 || c == 0x0931 || c == 0x0934) continue;
    chars.push_back(c);
  }
  return LabelSet(std::move(chars), 0);
}

SyntheticDocument Generate(const std::string& audio_id, int n_sentences, const FaultModel& fm,
                           const LabelSet& labels, double frame_duration_ms) {
  fm.Validate();
  if (!(frame_duration_ms > 0)) throw InvariantError("frame duration must be positive");
  Generator generator(fm, labels);
  return generator.Run(audio_id, n_sentences, frame_duration_ms);
}

SyntheticDocument GenerateCorpusDocument(int index, int n_sentences, const FaultModel& fm,
                                         const LabelSet& labels, const std::string& prefix,
                                         double frame_duration_ms) {
  FaultModel doc_fm = fm;
  doc_fm.seed = SplitMix64(fm.seed ^ SplitMix64(static_cast<uint64_t>(index)));
  char id[32];
  std::snprintf(id, sizeof(id), "%04d", index);
  return Generate(prefix + id, n_sentences, doc_fm, labels, frame_duration_ms);
}

std::vector<SyntheticDocument> GenerateCorpus(int n_documents, int n_sentences,
                                              const FaultModel& fm, const LabelSet& labels,
                                              const std::string& prefix) {
  std::vector<SyntheticDocument> docs;
  docs.reserve(static_cast<size_t>(std::max(n_documents, 0)));
  for (int i = 0; i < n_documents; ++i) {
    docs.push_back(GenerateCorpusDocument(i, n_sentences, fm, labels, prefix));
  }
  return docs;
}

std::string GroundTruthToJson(const GroundTruth& truth) {
  nlohmann::ordered_json j;
  j["audio_id"] = truth.audio_id;
  j["frame_count"] = truth.frame_count;
  j["frame_duration_ms"] = truth.frame_duration_ms;
  j["sentences"] = json::array();
  for (const GroundTruthSentence& s : truth.sentences) {
    nlohmann::ordered_json e;
    e["text"] = CodePointsToUtf8(s.text);
    e["frames"] = SpanJson(s.frames);
    e["corrupted"] = s.corrupted;
    j["sentences"].push_back(e);
  }
  j["untranscribed"] = json::array();
  for (const FrameSpan& s : truth.untranscribed) j["untranscribed"].push_back({s.start, s.end});
  return j.dump();
}

GroundTruth ParseGroundTruth(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
    GroundTruth truth;
    truth.audio_id = j.at("audio_id").get<std::string>();
    truth.frame_count = j.at("frame_count").get<int64_t>();
    truth.frame_duration_ms = j.at("frame_duration_ms").get<double>();
    for (const json& s : j.at("sentences")) {
      GroundTruthSentence gt;
      gt.text = Utf8ToCodePoints(s.at("text").get<std::string>());
      if (!s.at("frames").is_null()) gt.frames = ParseSpanJson(s.at("frames"));
      gt.corrupted = s.at("corrupted").get<bool>();
      truth.sentences.push_back(std::move(gt));
    }
    for (const json& s : j.at("untranscribed")) truth.untranscribed.push_back(ParseSpanJson(s));
    return truth;
  } catch (const json::exception& e) {
    throw FormatError(std::string("ground truth: ") + e.what());
  }
}

void WriteGroundTruth(const GroundTruth& truth, const std::filesystem::path& path) {
  WriteStringToFile(path, GroundTruthToJson(truth) + "\n");
}

GroundTruth ReadGroundTruth(const std::filesystem::path& path) {
  return ParseGroundTruth(ReadFileToString(path));
}

void EvalReport::Add(const EvalReport& other) {
  records += other.records;
  true_positives += other.true_positives;
  uncorrupted_sentences += other.uncorrupted_sentences;
  recalled_sentences += other.recalled_sentences;
  text_matched_records += other.text_matched_records;
  boundary_error_sum_frames += other.boundary_error_sum_frames;
  kept_ms += other.kept_ms;
  total_ms += other.total_ms;
  Finalize();
}

void EvalReport::Finalize() {
  precision = records > 0 ? static_cast<double>(true_positives) / static_cast<double>(records) : 1.0;
  recall = uncorrupted_sentences > 0 ? static_cast<double>(recalled_sentences) /
                                           static_cast<double>(uncorrupted_sentences)
                                     : 1.0;
  boundary_mae_frames = text_matched_records > 0
                            ? boundary_error_sum_frames / (2.0 * static_cast<double>(text_matched_records))
                            : 0.0;
  yield = total_ms > 0 ? kept_ms / total_ms : 0.0;
}

EvalReport Evaluate(const std::vector<SegmentRecord>& records, const GroundTruth& truth,
                    int64_t tol_frames) {
  const double d = truth.frame_duration_ms;
  // Interval ends are compared in milliseconds; allow for float rounding.
  const double tol_ms = static_cast<double>(tol_frames) * d + 1e-6 * d;

  std::vector<std::string> texts;
  texts.reserve(truth.sentences.size());
  for (const GroundTruthSentence& s : truth.sentences) texts.push_back(CodePointsToUtf8(s.text));

  EvalReport report;
  report.records = static_cast<int64_t>(records.size());
  report.total_ms = static_cast<double>(truth.frame_count) * d;
  for (const GroundTruthSentence& s : truth.sentences) report.uncorrupted_sentences += !s.corrupted;

  std::vector<char> recalled(truth.sentences.size(), 0);
  for (const SegmentRecord& r : records) {
    if (r.audio_id != truth.audio_id) {
      throw InvariantError("record for \"" + r.audio_id + "\" evaluated against ground truth for \"" +
                           truth.audio_id + "\"");
    }
    report.kept_ms += r.end_ms - r.start_ms;
    // Closest ground-truth sentence with the same text.
    std::optional<size_t> best;
    double best_err = std::numeric_limits<double>::infinity();
    double best_start_err = 0;
    double best_end_err = 0;
    for (size_t k = 0; k < truth.sentences.size(); ++k) {
      const auto& frames = truth.sentences[k].frames;
      if (!frames || texts[k] != r.ref_text) continue;
      const double start_err = std::abs(r.start_ms - static_cast<double>(frames->start) * d);
      const double end_err = std::abs(r.end_ms - static_cast<double>(frames->end + 1) * d);
      if (start_err + end_err < best_err) {
        best = k;
        best_err = start_err + end_err;
        best_start_err = start_err;
        best_end_err = end_err;
      }
    }
    if (!best) continue;
    ++report.text_matched_records;
    report.boundary_error_sum_frames += best_err / d;
    if (best_start_err <= tol_ms && best_end_err <= tol_ms) {
      ++report.true_positives;
      if (!truth.sentences[*best].corrupted && !recalled[*best]) {
        recalled[*best] = 1;
        ++report.recalled_sentences;
      }
    }
  }
  report.Finalize();
  return report;
}

int64_t BruteForceAlign(std::u32string_view r, std::u32string_view p, const ScoreParams& scores) {
  if (r.size() + p.size() > 16) {
    throw InvariantError("brute-force alignment limited to |r| + |p| <= 16");
  }
  return BruteForce(r, p, scores);
}

}  // namespace longalign
