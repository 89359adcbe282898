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

// Command-line front end. Exit status: 0 on success, 1 on usage or
// configuration errors, 2 when input data is malformed or unusable.

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "longalign/align.h"
#include "longalign/corpus.h"
#include "longalign/ctc.h"
#include "longalign/errors.h"
#include "longalign/formats.h"
#include "longalign/mine.h"
#include "longalign/run_config.h"
#include "longalign/synth.h"
#include "longalign/unicode.h"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace longalign {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

// Raised for configuration problems that are the caller's fault.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flags shared by every subcommand. Unset flags leave the config file value.
struct CommonFlags {
  std::string config_path;
  std::optional<double> tau;
  std::optional<int64_t> match;
  std::optional<int64_t> mismatch;
  std::optional<int64_t> gap;
  std::optional<double> frame_ms;
  std::optional<double> pad_ms;
  std::optional<std::string> eos_chars;
  std::optional<std::string> mode;
  std::optional<std::string> memory_budget;
  std::optional<int> workers;
  std::optional<uint64_t> seed;

  void Register(CLI::App* app) {
    app->add_option("--config", config_path, "INI-style config file")->check(CLI::ExistingFile);
    app->add_option("--tau", tau, "keep pairs with similarity >= tau");
    app->add_option("--match", match, "match score");
    app->add_option("--mismatch", mismatch, "mismatch score");
    app->add_option("--gap", gap, "gap score");
    app->add_option("--frame-ms", frame_ms, "frame duration in ms");
    app->add_option("--pad-ms", pad_ms, "padding added to each interval in ms");
    app->add_option("--eos-chars", eos_chars, "sentence-final characters");
    app->add_option("--mode", mode, "alignment mode")
        ->check(CLI::IsMember({"full", "linear", "auto"}));
    app->add_option("--memory-budget", memory_budget, "memory budget for full mode, e.g. 512M");
    app->add_option("--workers", workers, "worker threads for mine-corpus");
    app->add_option("--seed", seed, "random seed");
  }

  RunConfig Resolve() const {
    RunConfig config;
    try {
      if (!config_path.empty()) config = LoadRunConfig(config_path);
      if (tau) config.filter.tau = *tau;
      if (match) config.aligner.scores.match = *match;
      if (mismatch) config.aligner.scores.mismatch = *mismatch;
      if (gap) config.aligner.scores.gap = *gap;
      if (frame_ms) config.frame_ms = *frame_ms;
      if (pad_ms) config.pad_ms = *pad_ms;
      if (eos_chars) config.segmenter.eos_characters = Utf8ToCodePoints(*eos_chars);
      if (mode) config.aligner.mode = ParseAlignMode(*mode);
      if (memory_budget) config.aligner.memory_budget_bytes = ParseByteSize(*memory_budget);
      if (workers) config.workers = *workers;
      if (seed) config.seed = *seed;
      config.Validate();
    } catch (const IoError& e) {
      throw UsageError(e.what());
    } catch (const Error& e) {
      throw UsageError(std::string("invalid configuration: ") + e.what());
    }
    return config;
  }
};

ordered_json ReportJson(const MiningReport& r) {
  return {{"total_sentences", r.total_sentences},
          {"kept", r.kept},
          {"dropped_low_score", r.dropped_low_score},
          {"dropped_empty", r.dropped_empty},
          {"audio_total_ms", r.audio_total_ms},
          {"audio_kept_ms", r.audio_kept_ms},
          {"yield_fraction", r.yield_fraction}};
}

ordered_json EvalJson(const EvalReport& r) {
  return {{"precision", r.precision},
          {"recall", r.recall},
          {"boundary_mae_frames", r.boundary_mae_frames},
          {"yield", r.yield},
          {"records", r.records},
          {"true_positives", r.true_positives},
          {"uncorrupted_sentences", r.uncorrupted_sentences},
          {"recalled_sentences", r.recalled_sentences}};
}

ordered_json ConfigJson(const RunConfig& config) {
  return ordered_json::parse(config.ToJson());
}

void Emit(const ordered_json& j, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    WriteStringToFile(out_path, j.dump(2) + "\n");
  }
}

std::string AudioIdFor(const std::string& flag, const fs::path& emissions) {
  if (!flag.empty()) return flag;
  std::string stem = emissions.filename().string();
  // Strip compound suffixes such as ".emis" or ".pre.json".
  const size_t dot = stem.find('.');
  return dot == std::string::npos ? stem : stem.substr(0, dot);
}

// Predicted text and frame facts from either a binary emission matrix plus
// labels, or a pre-decoded JSON file.
struct LoadedPrediction {
  PredictedText text;
  int64_t frame_count = 0;
  double frame_ms = kDefaultFrameDurationMs;
};

LoadedPrediction LoadPrediction(const fs::path& emissions, const std::string& labels_path,
                                const RunConfig& config) {
  LoadedPrediction out;
  if (IsEmissionFile(emissions)) {
    if (labels_path.empty()) throw UsageError("--labels is required for binary emissions");
    const LabelSet labels = ReadLabelSet(labels_path);
    const EmissionMatrix m = ReadEmissionMatrix(emissions);
    if (m.label_count() != labels.size()) {
      throw FormatError("emission matrix has " + std::to_string(m.label_count()) +
                        " labels, label file has " + std::to_string(labels.size()));
    }
    out.text = Collapse(GreedyDecode(m), labels);
    out.frame_count = static_cast<int64_t>(m.frame_count());
    out.frame_ms = m.frame_duration_ms();
  } else {
    PredecodedInput in = ReadPredecoded(emissions);
    out.text = std::move(in.text);
    out.frame_count = in.frame_count.value_or(out.text.spans.empty() ? 0
                                                                     : out.text.spans.back().end + 1);
    out.frame_ms = in.frame_duration_ms.value_or(config.frame_ms);
  }
  out.text.Validate(out.frame_count);
  return out;
}

TranscriptKind KindFor(const std::string& flag, const fs::path& transcript) {
  if (flag.empty()) return SniffTranscriptKind(transcript);
  try {
    return ParseTranscriptKind(flag);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

// ---------------------------------------------------------------------------

struct DecodeArgs {
  std::string emissions, labels, out;
};

int RunDecode(const DecodeArgs& a, const RunConfig& config) {
  const LoadedPrediction pred = LoadPrediction(a.emissions, a.labels, config);
  PredecodedInput result{pred.text, pred.frame_count, pred.frame_ms};
  if (a.out.empty() || a.out == "-") {
    std::cout << PredecodedToJson(result) << '\n';
  } else {
    WritePredecoded(result, a.out);
  }
  return kExitOk;
}

struct OcrCleanArgs {
  std::string input, kind, out;
};

int RunOcrClean(const OcrCleanArgs& a, const RunConfig& config) {
  const ReferenceDocument doc = LoadTranscript(a.input, KindFor(a.kind, a.input), config.segmenter);
  if (a.out.empty() || a.out == "-") {
    std::cout << ReferenceToJson(doc) << '\n';
  } else {
    WriteReferenceJson(doc, a.out);
  }
  std::cerr << "ocr-clean: " << doc.sentences.size() << " sentences\n";
  return kExitOk;
}

struct AlignArgs {
  std::string emissions, labels, transcript, kind, out;
  bool render = false;
};

int RunAlign(const AlignArgs& a, const RunConfig& config) {
  const LoadedPrediction pred = LoadPrediction(a.emissions, a.labels, config);
  const ReferenceDocument ref =
      LoadTranscript(a.transcript, KindFor(a.kind, a.transcript), config.segmenter);
  const AlignmentMap map = Align(ref.text, pred.text.chars, config.aligner);
  const std::vector<SentenceSpan> spans = ProjectSentences(ref, map, pred.text);

  ordered_json j;
  j["score"] = AlignmentScoreTotal(map, config.aligner.scores);
  j["reference_chars"] = ref.text.size();
  j["predicted_chars"] = pred.text.chars.size();
  j["sentences"] = ordered_json::array();
  for (const SentenceSpan& s : spans) {
    ordered_json e;
    e["index"] = s.sentence_index;
    e["ref_range"] = {s.r_range.begin, s.r_range.end};
    if (s.p_range) {
      e["hyp_range"] = {s.p_range->begin, s.p_range->end};
      e["frames"] = {s.frame_range->start, s.frame_range->end};
      const TimeInterval t = FramesToInterval(*s.frame_range, pred.frame_ms, config.pad_ms);
      e["start_ms"] = t.start_ms;
      e["end_ms"] = t.end_ms;
    } else {
      e["hyp_range"] = nullptr;
      e["frames"] = nullptr;
    }
    j["sentences"].push_back(std::move(e));
  }
  if (a.render) {
    auto [top, bottom] = RenderAlignment(map, ref.text, pred.text.chars);
    j["render"] = {CodePointsToUtf8(top), CodePointsToUtf8(bottom)};
  }
  j["config"] = ConfigJson(config);
  Emit(j, a.out);
  return kExitOk;
}

struct MineArgs {
  std::string emissions, labels, transcript, kind, out, audio_id;
};

int RunMine(const MineArgs& a, const RunConfig& config) {
  CorpusConfig cc{LabelSet(U"", 0), config.mine_options(), config.segmenter, config.frame_ms};
  if (IsEmissionFile(a.emissions)) {
    if (a.labels.empty()) throw UsageError("--labels is required for binary emissions");
    cc.labels = ReadLabelSet(a.labels);
  }
  const CorpusJob job{AudioIdFor(a.audio_id, a.emissions), a.emissions, a.transcript,
                      KindFor(a.kind, a.transcript)};
  const MineResult result = MineJob(job, cc);
  WriteManifest(result.records, fs::path(a.out));
  ordered_json j = ReportJson(result.report);
  j["config"] = ConfigJson(config);
  std::cout << j.dump(2) << '\n';
  return kExitOk;
}

struct MineCorpusArgs {
  std::string jobs, labels, out, report;
};

int RunMineCorpus(const MineCorpusArgs& a, const RunConfig& config) {
  CorpusConfig cc{LabelSet(U"", 0), config.mine_options(), config.segmenter, config.frame_ms};
  if (!a.labels.empty()) cc.labels = ReadLabelSet(a.labels);
  const std::vector<CorpusJob> jobs = ReadJobList(a.jobs);
  const CorpusResult result = MineCorpus(
      jobs, cc, config.workers, a.out,
      [](size_t index, const CorpusJob& job, const MineResult* ok, const JobFailure* failure) {
        if (ok != nullptr) {
          std::cerr << "[" << index << "] " << job.audio_id << ": kept " << ok->report.kept
                    << "/" << ok->report.total_sentences << "\n";
        } else {
          std::cerr << "[" << index << "] " << job.audio_id << ": FAILED " << failure->message
                    << "\n";
        }
      });
  ordered_json j = ReportJson(result.report);
  j["documents"] = jobs.size();
  j["documents_ok"] = result.documents_ok;
  j["failures"] = ordered_json::array();
  for (const JobFailure& f : result.failures) {
    j["failures"].push_back({{"job", f.job_index}, {"audio_id", f.audio_id}, {"error", f.message}});
  }
  j["config"] = ConfigJson(config);
  Emit(j, a.report);
  return kExitOk;
}

struct SynthArgs {
  std::string out_dir;
  std::string prefix = "doc";
  int documents = 1;
  int sentences = 20;
  double sub_rate = 0, ins_rate = 0, del_rate = 0, ocr_join_rate = 0;
  std::vector<int64_t> prefix_frames{0, 0};
  std::vector<int64_t> suffix_frames{0, 0};
  std::vector<int64_t> interior_frames{50, 150};
  double interior_prob = 0;
  int interior_count = 0;
  double extraneous_prob = 0, skipped_word_prob = 0, extra_word_prob = 0;
};

int RunSynth(const SynthArgs& a, const RunConfig& config) {
  if (a.documents < 0 || a.sentences < 0) throw UsageError("counts must be non-negative");
  FaultModel fm;
  fm.sub_rate = a.sub_rate;
  fm.ins_rate = a.ins_rate;
  fm.del_rate = a.del_rate;
  fm.ocr_join_rate = a.ocr_join_rate;
  fm.untranscribed_prefix_frames = {a.prefix_frames[0], a.prefix_frames[1]};
  fm.untranscribed_suffix_frames = {a.suffix_frames[0], a.suffix_frames[1]};
  fm.interior_untranscribed_frames = {a.interior_frames[0], a.interior_frames[1]};
  fm.interior_untranscribed_prob = a.interior_prob;
  fm.interior_untranscribed_count = a.interior_count;
  fm.extraneous_header_prob = a.extraneous_prob;
  fm.skipped_word_prob = a.skipped_word_prob;
  fm.extra_word_prob = a.extra_word_prob;
  fm.seed = config.seed;
  try {
    fm.Validate();
  } catch (const InvariantError& e) {
    throw UsageError(std::string("invalid fault model: ") + e.what());
  }

  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  const LabelSet labels = DefaultSyntheticLabels();
  WriteLabelSet(labels, dir / "labels.txt");
  std::string job_lines;
  for (int i = 0; i < a.documents; ++i) {
    const SyntheticDocument doc =
        GenerateCorpusDocument(i, a.sentences, fm, labels, a.prefix, config.frame_ms);
    const std::string& audio_id = doc.truth.audio_id;
    WriteEmissionMatrix(doc.emissions, dir / (audio_id + ".emis"));
    WriteReferenceJson(doc.reference, dir / (audio_id + ".ref.json"));
    WriteGroundTruth(doc.truth, dir / (audio_id + ".gt.json"));
    job_lines += JobLine({audio_id, audio_id + ".emis", audio_id + ".ref.json",
                          TranscriptKind::kPredecoded}) +
                 "\n";
  }
  WriteStringToFile(dir / "jobs.jsonl", job_lines);
  std::cerr << "synth: wrote " << a.documents << " documents to " << dir.string() << "\n";
  return kExitOk;
}

struct EvaluateArgs {
  std::string manifest, truth_dir, out;
  int64_t tol_frames = 2;
};

int RunEvaluate(const EvaluateArgs& a, const RunConfig& config) {
  const std::vector<SegmentRecord> records = ReadManifest(fs::path(a.manifest));
  std::map<std::string, std::vector<SegmentRecord>> by_doc;
  for (const SegmentRecord& r : records) by_doc[r.audio_id].push_back(r);

  std::vector<fs::path> truth_files;
  for (const auto& entry : fs::directory_iterator(a.truth_dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > 8 && name.ends_with(".gt.json")) truth_files.push_back(entry.path());
  }
  std::sort(truth_files.begin(), truth_files.end());
  if (truth_files.empty()) throw FormatError("no *.gt.json files in " + a.truth_dir);

  EvalReport total;
  ordered_json docs = ordered_json::array();
  for (const fs::path& path : truth_files) {
    const GroundTruth truth = ReadGroundTruth(path);
    auto it = by_doc.find(truth.audio_id);
    const std::vector<SegmentRecord> none;
    const EvalReport r = Evaluate(it == by_doc.end() ? none : it->second, truth, a.tol_frames);
    if (it != by_doc.end()) by_doc.erase(it);
    total.Add(r);
    ordered_json d{{"audio_id", truth.audio_id}};
    d.update(EvalJson(r));
    docs.push_back(std::move(d));
  }
  if (!by_doc.empty()) {
    throw FormatError("manifest has records for " + by_doc.begin()->first +
                      " with no ground truth");
  }
  total.Finalize();
  ordered_json j = EvalJson(total);
  j["tol_frames"] = a.tol_frames;
  j["documents"] = docs;
  j["config"] = ConfigJson(config);
  Emit(j, a.out);
  return kExitOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"Mine sentence-aligned speech/text pairs from long recordings"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "longalign 0.1.0");

  CommonFlags flags;
  auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    flags.Register(sub);
    return sub;
  };

  DecodeArgs decode;
  CLI::App* decode_cmd = add("decode", "greedy CTC decode to pre-decoded JSON");
  decode_cmd->add_option("--emissions", decode.emissions)->required();
  decode_cmd->add_option("--labels", decode.labels)->required();
  decode_cmd->add_option("--out", decode.out, "output file, '-' for stdout");

  OcrCleanArgs clean;
  CLI::App* clean_cmd = add("ocr-clean", "extract sentences from OCR tokens or plain text");
  clean_cmd->add_option("--input", clean.input)->required()->check(CLI::ExistingFile);
  clean_cmd->add_option("--kind", clean.kind, "ocr_tokens | plain_text | predecoded");
  clean_cmd->add_option("--out", clean.out, "reference JSON, '-' for stdout");

  AlignArgs align;
  CLI::App* align_cmd = add("align", "align a transcript against decoded audio");
  align_cmd->add_option("--emissions", align.emissions)->required()->check(CLI::ExistingFile);
  align_cmd->add_option("--labels", align.labels);
  align_cmd->add_option("--transcript", align.transcript)->required()->check(CLI::ExistingFile);
  align_cmd->add_option("--kind", align.kind);
  align_cmd->add_option("--out", align.out);
  align_cmd->add_flag("--render", align.render, "include the rendered alignment");

  MineArgs mine;
  CLI::App* mine_cmd = add("mine", "mine one document; prints the report as JSON");
  mine_cmd->add_option("--emissions", mine.emissions)->required()->check(CLI::ExistingFile);
  mine_cmd->add_option("--labels", mine.labels);
  mine_cmd->add_option("--transcript", mine.transcript)->required()->check(CLI::ExistingFile);
  mine_cmd->add_option("--kind", mine.kind);
  mine_cmd->add_option("--audio-id", mine.audio_id);
  mine_cmd->add_option("--out", mine.out, "manifest JSONL")->required();

  MineCorpusArgs corpus;
  CLI::App* corpus_cmd = add("mine-corpus", "mine every job of a JSONL job list");
  corpus_cmd->add_option("--jobs", corpus.jobs)->required()->check(CLI::ExistingFile);
  corpus_cmd->add_option("--labels", corpus.labels);
  corpus_cmd->add_option("--out", corpus.out, "manifest JSONL")->required();
  corpus_cmd->add_option("--report", corpus.report, "report JSON, stdout by default");

  SynthArgs synth;
  CLI::App* synth_cmd = add("synth", "generate a synthetic corpus with ground truth");
  synth_cmd->add_option("--out-dir", synth.out_dir)->required();
  synth_cmd->add_option("--prefix", synth.prefix);
  synth_cmd->add_option("--documents", synth.documents);
  synth_cmd->add_option("--sentences", synth.sentences);
  synth_cmd->add_option("--sub-rate", synth.sub_rate);
  synth_cmd->add_option("--ins-rate", synth.ins_rate);
  synth_cmd->add_option("--del-rate", synth.del_rate);
  synth_cmd->add_option("--ocr-join-rate", synth.ocr_join_rate);
  synth_cmd->add_option("--prefix-frames", synth.prefix_frames, "MIN MAX")->expected(2);
  synth_cmd->add_option("--suffix-frames", synth.suffix_frames, "MIN MAX")->expected(2);
  synth_cmd->add_option("--interior-frames", synth.interior_frames, "MIN MAX")->expected(2);
  synth_cmd->add_option("--interior-prob", synth.interior_prob);
  synth_cmd->add_option("--interior-count", synth.interior_count);
  synth_cmd->add_option("--extraneous-prob", synth.extraneous_prob);
  synth_cmd->add_option("--skipped-word-prob", synth.skipped_word_prob);
  synth_cmd->add_option("--extra-word-prob", synth.extra_word_prob);

  EvaluateArgs eval;
  CLI::App* eval_cmd = add("evaluate", "score a manifest against synthetic ground truth");
  eval_cmd->add_option("--manifest", eval.manifest)->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--truth-dir", eval.truth_dir)->required()->check(CLI::ExistingDirectory);
  eval_cmd->add_option("--tol-frames", eval.tol_frames)->check(CLI::NonNegativeNumber);
  eval_cmd->add_option("--out", eval.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    const RunConfig config = flags.Resolve();
    if (decode_cmd->parsed()) return RunDecode(decode, config);
    if (clean_cmd->parsed()) return RunOcrClean(clean, config);
    if (align_cmd->parsed()) return RunAlign(align, config);
    if (mine_cmd->parsed()) return RunMine(mine, config);
    if (corpus_cmd->parsed()) return RunMineCorpus(corpus, config);
    if (synth_cmd->parsed()) return RunSynth(synth, config);
    if (eval_cmd->parsed()) return RunEvaluate(eval, config);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace longalign

int main(int argc, char** argv) { return longalign::Main(argc, argv); }
