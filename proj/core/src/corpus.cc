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

#include "longalign/corpus.h"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>

#include "json.hpp"
#include "longalign/errors.h"
#include "longalign/formats.h"

namespace longalign {
namespace {

using json = nlohmann::json;

struct JobOutcome {
  std::optional<MineResult> result;
  std::optional<JobFailure> failure;
};

}  // namespace

TranscriptKind ParseTranscriptKind(std::string_view name) {
  if (name == "ocr_tokens") return TranscriptKind::kOcrTokens;
  if (name == "plain_text") return TranscriptKind::kPlainText;
  if (name == "predecoded") return TranscriptKind::kPredecoded;
  throw FormatError("unknown transcript kind \"" + std::string(name) + "\"");
}

std::string_view TranscriptKindName(TranscriptKind kind) {
  switch (kind) {
    case TranscriptKind::kOcrTokens:
      return "ocr_tokens";
    case TranscriptKind::kPlainText:
      return "plain_text";
    case TranscriptKind::kPredecoded:
      return "predecoded";
  }
  return "plain_text";
}

TranscriptKind SniffTranscriptKind(const std::filesystem::path& path) {
  if (path.extension() == ".txt") return TranscriptKind::kPlainText;
  const std::string contents = ReadFileToString(path);
  const size_t first = contents.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && contents[first] == '[') return TranscriptKind::kOcrTokens;
  if (first != std::string::npos && contents[first] == '{') return TranscriptKind::kPredecoded;
  return TranscriptKind::kPlainText;
}

ReferenceDocument LoadTranscript(const std::filesystem::path& path, TranscriptKind kind,
                                 const SegmenterConfig& segmenter) {
  switch (kind) {
    case TranscriptKind::kOcrTokens:
      return CleanOcrTokens(ReadOcrTokens(path), segmenter);
    case TranscriptKind::kPlainText:
      return CleanPlainText(ReadFileToString(path), segmenter);
    case TranscriptKind::kPredecoded:
      return ReadReferenceJson(path);
  }
  throw Error("unreachable transcript kind");
}

std::vector<CorpusJob> ReadJobList(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open job list " + path.string());
  const std::filesystem::path base = path.parent_path();
  const auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };
  std::vector<CorpusJob> jobs;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "job list line " + std::to_string(line_no) + ": ";
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw FormatError(where + e.what());
    }
    for (const char* f : {"audio_id", "emissions", "transcript", "transcript_kind"}) {
      if (!j.is_object() || !j.contains(f) || !j[f].is_string()) {
        throw FormatError(where + "missing string field " + f);
      }
    }
    jobs.push_back({j["audio_id"].get<std::string>(), resolve(j["emissions"].get<std::string>()),
                    resolve(j["transcript"].get<std::string>()),
                    ParseTranscriptKind(j["transcript_kind"].get<std::string>())});
  }
  return jobs;
}

std::string JobLine(const CorpusJob& job) {
  nlohmann::ordered_json j;
  j["audio_id"] = job.audio_id;
  j["emissions"] = job.emissions.string();
  j["transcript"] = job.transcript.string();
  j["transcript_kind"] = std::string(TranscriptKindName(job.transcript_kind));
  return j.dump();
}

MineResult MineJob(const CorpusJob& job, const CorpusConfig& config) {
  const ReferenceDocument reference =
      LoadTranscript(job.transcript, job.transcript_kind, config.segmenter);
  if (IsEmissionFile(job.emissions)) {
    return MineDocument(ReadEmissionMatrix(job.emissions, job.audio_id), config.labels, reference,
                        config.mine);
  }
  const PredecodedInput input = ReadPredecoded(job.emissions);
  return MinePredicted(job.audio_id, input.text, input.frame_count.value_or(0),
                       input.frame_duration_ms.value_or(config.frame_duration_ms), reference,
                       config.mine);
}

CorpusResult MineCorpus(const std::vector<CorpusJob>& jobs, const CorpusConfig& config,
                        int workers, const std::filesystem::path& manifest_path,
                        const JobCallback& on_job) {
  config.mine.Validate();
  config.segmenter.Validate();
  std::ofstream manifest(manifest_path, std::ios::binary | std::ios::trunc);
  if (!manifest) throw IoError("cannot open " + manifest_path.string() + " for writing");

  const size_t thread_count =
      std::clamp<size_t>(workers > 0 ? static_cast<size_t>(workers) : 1, 1,
                         std::max<size_t>(jobs.size(), 1));

  std::vector<JobOutcome> outcomes(jobs.size());
  std::vector<char> done(jobs.size(), 0);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<size_t> next{0};

  auto work = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      JobOutcome outcome;
      try {
        outcome.result = MineJob(jobs[i], config);
      } catch (const std::exception& e) {
        outcome.failure = JobFailure{i, jobs[i].audio_id, e.what()};
      }
      {
        std::lock_guard<std::mutex> lock(mu);
        outcomes[i] = std::move(outcome);
        done[i] = 1;
      }
      cv.notify_all();
    }
  };

  CorpusResult corpus;
  {
    std::vector<std::jthread> pool;
    pool.reserve(thread_count);
    for (size_t t = 0; t < thread_count; ++t) pool.emplace_back(work);

    // Drain in job order so output does not depend on scheduling.
    for (size_t i = 0; i < jobs.size(); ++i) {
      JobOutcome outcome;
      {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&] { return done[i] != 0; });
        outcome = std::move(outcomes[i]);
      }
      if (outcome.result) {
        WriteManifest(outcome.result->records, manifest);
        corpus.report.Add(outcome.result->report);
        ++corpus.documents_ok;
      } else {
        corpus.failures.push_back(*outcome.failure);
      }
      if (on_job) {
        on_job(i, jobs[i], outcome.result ? &*outcome.result : nullptr,
               outcome.failure ? &*outcome.failure : nullptr);
      }
    }
  }
  manifest.flush();
  if (!manifest) throw IoError("error writing " + manifest_path.string());
  if (!jobs.empty() && corpus.documents_ok == 0) {
    throw Error("all " + std::to_string(jobs.size()) + " documents failed; first error: " +
                corpus.failures.front().message);
  }
  return corpus;
}

}  // namespace longalign
