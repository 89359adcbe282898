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

// Corpus-scale mining over a job list, with document-level parallelism.

#ifndef LONGALIGN_CORPUS_H_
#define LONGALIGN_CORPUS_H_

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "longalign/mine.h"
#include "longalign/textproc.h"
#include "longalign/types.h"

namespace longalign {

enum class TranscriptKind {
  kOcrTokens,   // OCR token JSON, cleaned with textproc
  kPlainText,   // UTF-8 text, one line per text line
  kPredecoded,  // reference JSON with text and sentence ranges, used as is
};

TranscriptKind ParseTranscriptKind(std::string_view name);
std::string_view TranscriptKindName(TranscriptKind kind);

// Chooses a kind from the file: .txt is plain text, a JSON array is OCR
// tokens, a JSON object is a reference document.
TranscriptKind SniffTranscriptKind(const std::filesystem::path& path);

ReferenceDocument LoadTranscript(const std::filesystem::path& path, TranscriptKind kind,
                                 const SegmenterConfig& segmenter);

// One line of the job list:
// {"audio_id": ..., "emissions": ..., "transcript": ..., "transcript_kind": ...}
// Relative paths are resolved against the job list's directory.
struct CorpusJob {
  std::string audio_id;
  std::filesystem::path emissions;  // binary emission matrix or pre-decoded JSON
  std::filesystem::path transcript;
  TranscriptKind transcript_kind = TranscriptKind::kPlainText;
};

std::vector<CorpusJob> ReadJobList(const std::filesystem::path& path);
std::string JobLine(const CorpusJob& job);

struct CorpusConfig {
  LabelSet labels{U"", 0};
  MineOptions mine;
  SegmenterConfig segmenter;
  // Frame duration for pre-decoded inputs that do not declare one.
  double frame_duration_ms = kDefaultFrameDurationMs;
};

// Mines one job: loads its inputs and runs the pipeline.
MineResult MineJob(const CorpusJob& job, const CorpusConfig& config);

struct JobFailure {
  size_t job_index = 0;
  std::string audio_id;
  std::string message;
};

struct CorpusResult {
  MiningReport report;
  size_t documents_ok = 0;
  std::vector<JobFailure> failures;
};

// Called once per finished job, in job order, from the calling thread.
using JobCallback = std::function<void(size_t job_index, const CorpusJob& job,
                                       const MineResult* result, const JobFailure* failure)>;

// Mines every job with `workers` threads and writes the manifest with
// records grouped by job in input order, independent of thread count.
// Failed jobs are reported and skipped. Throws Error when every job failed
// (an empty job list is not a failure).
CorpusResult MineCorpus(const std::vector<CorpusJob>& jobs, const CorpusConfig& config,
                        int workers, const std::filesystem::path& manifest_path,
                        const JobCallback& on_job = nullptr);

}  // namespace longalign

#endif  // LONGALIGN_CORPUS_H_
