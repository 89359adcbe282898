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

// Synthetic recordings with known sentence timing, for testing the mining
// pipeline end to end.
//
// A generated document is a reference transcript plus a near-one-hot
// emission matrix (winning label at 0, every other label at -10) of the
// "spoken" version of that transcript. The fault model perturbs the two
// sides independently:
//
//  * ASR noise: character substitutions, insertions and deletions.
//  * Untranscribed audio: music-like noise frames before the first
//    sentence, after the last one, and between sentences. Noise frames draw
//    uniformly from the word characters of the label set.
//  * Transcript faults: unspoken extraneous sentences, joined words, words
//    the reader skipped, and words the reader added.
//
// Sentences hit by a transcript fault are flagged as corrupted in the
// ground truth. ASR noise does not mark a sentence as corrupted.

#ifndef LONGALIGN_SYNTH_H_
#define LONGALIGN_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "longalign/types.h"

namespace longalign {

// Inclusive integer range for random lengths.
struct LengthRange {
  int64_t min = 0;
  int64_t max = 0;
};

struct FaultModel {
  double sub_rate = 0;
  double ins_rate = 0;
  double del_rate = 0;
  // Probability that an inter-word space is lost in the transcript.
  double ocr_join_rate = 0;
  LengthRange untranscribed_prefix_frames;
  LengthRange untranscribed_suffix_frames;
  // Probability of untranscribed audio after each sentence.
  double interior_untranscribed_prob = 0;
  // Exact number of additional interior spans, at distinct sentence gaps.
  int interior_untranscribed_count = 0;
  LengthRange interior_untranscribed_frames{50, 150};
  // Probability of an unspoken extraneous sentence before each sentence.
  double extraneous_header_prob = 0;
  double skipped_word_prob = 0;
  double extra_word_prob = 0;
  uint64_t seed = 0;

  void Validate() const;
};

struct GroundTruthSentence {
  std::u32string text;
  std::optional<FrameSpan> frames;  // unset for unspoken text
  bool corrupted = false;
  friend bool operator==(const GroundTruthSentence&, const GroundTruthSentence&) = default;
};

struct GroundTruth {
  std::string audio_id;
  int64_t frame_count = 0;
  double frame_duration_ms = kDefaultFrameDurationMs;
  std::vector<GroundTruthSentence> sentences;  // parallel to the reference sentences
  std::vector<FrameSpan> untranscribed;

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

struct SyntheticDocument {
  EmissionMatrix emissions;
  ReferenceDocument reference;
  GroundTruth truth;
  std::u32string spoken;  // characters realized in the emissions, noise excluded
};

// Devanagari consonants, a space and the danda.
LabelSet DefaultSyntheticLabels();

// Deterministic given fm.seed. Requires at least four non-blank labels, of
// which at least two are word characters (not whitespace, not EOS).
SyntheticDocument Generate(const std::string& audio_id, int n_sentences, const FaultModel& fm,
                           const LabelSet& labels,
                           double frame_duration_ms = kDefaultFrameDurationMs);

// Documents "<prefix>0000", "<prefix>0001", ... each seeded from fm.seed and
// its index.
// Document `index` of a corpus: id "<prefix>NNNN", seed derived from fm.seed.
SyntheticDocument GenerateCorpusDocument(int index, int n_sentences, const FaultModel& fm,
                                         const LabelSet& labels, const std::string& prefix = "doc",
                                         double frame_duration_ms = kDefaultFrameDurationMs);

std::vector<SyntheticDocument> GenerateCorpus(int n_documents, int n_sentences,
                                              const FaultModel& fm, const LabelSet& labels,
                                              const std::string& prefix = "doc");

std::string GroundTruthToJson(const GroundTruth& truth);
GroundTruth ParseGroundTruth(std::string_view json);
void WriteGroundTruth(const GroundTruth& truth, const std::filesystem::path& path);
GroundTruth ReadGroundTruth(const std::filesystem::path& path);

struct EvalReport {
  double precision = 1.0;
  double recall = 0.0;
  double boundary_mae_frames = 0.0;
  double yield = 0.0;

  int64_t records = 0;
  int64_t true_positives = 0;
  int64_t uncorrupted_sentences = 0;
  int64_t recalled_sentences = 0;
  int64_t text_matched_records = 0;
  double boundary_error_sum_frames = 0.0;
  double kept_ms = 0.0;
  double total_ms = 0.0;

  // Sums the counts of another report and recomputes the ratios.
  void Add(const EvalReport& other);
  void Finalize();
};

// Scores mined records of one document against its ground truth. A record
// is a true positive when its reference text equals a ground-truth sentence
// and both interval ends lie within tol_frames of that sentence's frames.
// Precision with no records is 1 by convention. Throws InvariantError when a
// record belongs to another document.
EvalReport Evaluate(const std::vector<SegmentRecord>& records, const GroundTruth& truth,
                    int64_t tol_frames);

// Exhaustive maximum over all global alignments, by plain three-way
// recursion. Exponential; requires |r| + |p| <= 16.
int64_t BruteForceAlign(std::u32string_view r, std::u32string_view p, const ScoreParams& scores);

}  // namespace longalign

#endif  // LONGALIGN_SYNTH_H_
