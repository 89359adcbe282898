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

#include "longalign/align.h"

#include <algorithm>
#include <limits>
#include <string>

#include "longalign/errors.h"

namespace longalign {
namespace {

// Traceback codes, two bits each.
constexpr uint8_t kDiag = 0;
constexpr uint8_t kUp = 1;    // consume r, gap in P
constexpr uint8_t kLeft = 2;  // consume p, gap in R

// Subproblems with at most this many cells are solved with a full
// traceback inside the linear-space recursion.
constexpr uint64_t kLinearBaseCells = uint64_t{1} << 20;

uint64_t SaturatingMul(uint64_t a, uint64_t b) {
  if (a != 0 && b > std::numeric_limits<uint64_t>::max() / a) {
    return std::numeric_limits<uint64_t>::max();
  }
  return a * b;
}

uint64_t SaturatingAdd(uint64_t a, uint64_t b) {
  return a > std::numeric_limits<uint64_t>::max() - b ? std::numeric_limits<uint64_t>::max()
                                                      : a + b;
}

class PackedTraceback {
 public:
  explicit PackedTraceback(size_t cells) : bits_((cells + 3) / 4, 0) {}
  void Set(size_t cell, uint8_t dir) {
    bits_[cell >> 2] |= static_cast<uint8_t>(dir << ((cell & 3) * 2));
  }
  uint8_t Get(size_t cell) const { return (bits_[cell >> 2] >> ((cell & 3) * 2)) & 3; }

 private:
  std::vector<uint8_t> bits_;
};

AlignStep DiagStep(std::u32string_view r, std::u32string_view p, size_t i, size_t j,
                   int64_t r_off, int64_t p_off) {
  return {r[i] == p[j] ? StepKind::kMatch : StepKind::kMismatch,
          r_off + static_cast<int64_t>(i), p_off + static_cast<int64_t>(j)};
}

// Full dynamic program with packed traceback. Appends the steps for
// aligning r against p, with indices shifted by the offsets.
void FullAlignInto(std::u32string_view r, std::u32string_view p, const ScoreParams& s,
                   int64_t r_off, int64_t p_off, std::vector<AlignStep>& out) {
  const size_t n = r.size();
  const size_t m = p.size();
  const size_t cols = m + 1;
  PackedTraceback tb((n + 1) * cols);
  std::vector<int64_t> prev(cols);
  std::vector<int64_t> cur(cols);

  for (size_t j = 0; j < cols; ++j) {
    prev[j] = static_cast<int64_t>(j) * s.gap;
    if (j > 0) tb.Set(j, kLeft);
  }
  for (size_t i = 1; i <= n; ++i) {
    const char32_t rc = r[i - 1];
    const size_t row = i * cols;
    cur[0] = static_cast<int64_t>(i) * s.gap;
    tb.Set(row, kUp);
    for (size_t j = 1; j < cols; ++j) {
      const int64_t diag = prev[j - 1] + (rc == p[j - 1] ? s.match : s.mismatch);
      const int64_t up = prev[j] + s.gap;
      const int64_t left = cur[j - 1] + s.gap;
      int64_t best = diag;
      uint8_t dir = kDiag;
      if (up > best) {
        best = up;
        dir = kUp;
      }
      if (left > best) {
        best = left;
        dir = kLeft;
      }
      cur[j] = best;
      if (dir != kDiag) tb.Set(row + j, dir);
    }
    std::swap(prev, cur);
  }

  const size_t first = out.size();
  size_t i = n;
  size_t j = m;
  while (i > 0 || j > 0) {
    switch (tb.Get(i * cols + j)) {
      case kDiag:
        --i;
        --j;
        out.push_back(DiagStep(r, p, i, j, r_off, p_off));
        break;
      case kUp:
        --i;
        out.push_back({StepKind::kGapInP, r_off + static_cast<int64_t>(i), -1});
        break;
      default:
        --j;
        out.push_back({StepKind::kGapInR, -1, p_off + static_cast<int64_t>(j)});
        break;
    }
  }
  std::reverse(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
}

// row[j] = optimal score of aligning all of r against p[0, j).
void PrefixScores(std::u32string_view r, std::u32string_view p, const ScoreParams& s,
                  std::vector<int64_t>& row) {
  const size_t m = p.size();
  row.resize(m + 1);
  for (size_t j = 0; j <= m; ++j) row[j] = static_cast<int64_t>(j) * s.gap;
  for (size_t i = 0; i < r.size(); ++i) {
    const char32_t rc = r[i];
    int64_t diag_prev = row[0];
    row[0] += s.gap;
    for (size_t j = 1; j <= m; ++j) {
      const int64_t up = row[j] + s.gap;
      const int64_t diag = diag_prev + (rc == p[j - 1] ? s.match : s.mismatch);
      const int64_t left = row[j - 1] + s.gap;
      diag_prev = row[j];
      row[j] = std::max({diag, up, left});
    }
  }
}

// row[j] = optimal score of aligning all of r against p[j, m).
void SuffixScores(std::u32string_view r, std::u32string_view p, const ScoreParams& s,
                  std::vector<int64_t>& row) {
  const size_t m = p.size();
  row.resize(m + 1);
  for (size_t j = 0; j <= m; ++j) row[j] = static_cast<int64_t>(m - j) * s.gap;
  for (size_t i = r.size(); i-- > 0;) {
    const char32_t rc = r[i];
    int64_t diag_prev = row[m];
    row[m] += s.gap;
    for (size_t j = m; j-- > 0;) {
      const int64_t down = row[j] + s.gap;
      const int64_t diag = diag_prev + (rc == p[j] ? s.match : s.mismatch);
      const int64_t right = row[j + 1] + s.gap;
      diag_prev = row[j];
      row[j] = std::max({diag, down, right});
    }
  }
}

void LinearAlignInto(std::u32string_view r, std::u32string_view p, const ScoreParams& s,
                     int64_t r_off, int64_t p_off, std::vector<AlignStep>& out,
                     std::vector<int64_t>& fwd, std::vector<int64_t>& bwd) {
  const size_t n = r.size();
  const size_t m = p.size();
  if (n <= 1 || SaturatingMul(n + 1, m + 1) <= kLinearBaseCells) {
    FullAlignInto(r, p, s, r_off, p_off, out);
    return;
  }
  const size_t mid = n / 2;
  PrefixScores(r.substr(0, mid), p, s, fwd);
  SuffixScores(r.substr(mid), p, s, bwd);
  // The largest optimal split column mirrors the kFull preference for
  // consuming reference characters late during traceback.
  size_t split = 0;
  int64_t best = std::numeric_limits<int64_t>::min();
  for (size_t j = 0; j <= m; ++j) {
    const int64_t total = fwd[j] + bwd[j];
    if (total >= best) {
      best = total;
      split = j;
    }
  }
  LinearAlignInto(r.substr(0, mid), p.substr(0, split), s, r_off, p_off, out, fwd, bwd);
  LinearAlignInto(r.substr(mid), p.substr(split), s, r_off + static_cast<int64_t>(mid),
                  p_off + static_cast<int64_t>(split), out, fwd, bwd);
}

}  // namespace

void AlignerConfig::Validate() const {
  scores.Validate();
  if (memory_budget_bytes == 0) throw InvariantError("memory budget must be positive");
}

uint64_t FullModeMemoryBytes(size_t n, size_t m) {
  const uint64_t rows_n = SaturatingAdd(n, 1);
  const uint64_t cols = SaturatingAdd(m, 1);
  const uint64_t cells = SaturatingMul(rows_n, cols);
  const uint64_t traceback = SaturatingAdd(cells / 4, 1);
  const uint64_t rows = SaturatingMul(SaturatingMul(2, cols), sizeof(int64_t));
  return SaturatingAdd(traceback, rows);
}

AlignmentMap Align(std::u32string_view reference, std::u32string_view predicted,
                   const AlignerConfig& config) {
  config.Validate();
  const uint64_t full_bytes = FullModeMemoryBytes(reference.size(), predicted.size());
  AlignMode mode = config.mode;
  if (mode == AlignMode::kAuto) {
    mode = full_bytes <= config.memory_budget_bytes ? AlignMode::kFull : AlignMode::kLinearSpace;
  }
  AlignmentMap map;
  map.steps.reserve(reference.size() + predicted.size());
  if (mode == AlignMode::kFull) {
    if (full_bytes > config.memory_budget_bytes) {
      throw MemoryBudgetError("full alignment of " + std::to_string(reference.size()) + " x " +
                              std::to_string(predicted.size()) + " needs " +
                              std::to_string(full_bytes) + " bytes, budget is " +
                              std::to_string(config.memory_budget_bytes));
    }
    FullAlignInto(reference, predicted, config.scores, 0, 0, map.steps);
  } else {
    std::vector<int64_t> fwd;
    std::vector<int64_t> bwd;
    LinearAlignInto(reference, predicted, config.scores, 0, 0, map.steps, fwd, bwd);
  }
  return map;
}

int64_t OptimalAlignmentScore(std::u32string_view reference, std::u32string_view predicted,
                              const ScoreParams& scores) {
  std::vector<int64_t> row;
  PrefixScores(reference, predicted, scores, row);
  return row.back();
}

int64_t AlignmentScoreTotal(const AlignmentMap& map, const ScoreParams& scores) {
  int64_t total = 0;
  for (const AlignStep& step : map.steps) {
    switch (step.kind) {
      case StepKind::kMatch:
        total += scores.match;
        break;
      case StepKind::kMismatch:
        total += scores.mismatch;
        break;
      case StepKind::kGapInP:
      case StepKind::kGapInR:
        total += scores.gap;
        break;
    }
  }
  return total;
}

std::pair<std::u32string, std::u32string> RenderAlignment(const AlignmentMap& map,
                                                          std::u32string_view reference,
                                                          std::u32string_view predicted) {
  std::u32string top;
  std::u32string bottom;
  for (const AlignStep& step : map.steps) {
    top.push_back(step.r >= 0 ? reference[static_cast<size_t>(step.r)] : U'@');
    bottom.push_back(step.p >= 0 ? predicted[static_cast<size_t>(step.p)] : U'@');
  }
  return {top, bottom};
}

std::vector<SentenceSpan> ProjectSentences(const ReferenceDocument& reference,
                                           const AlignmentMap& map,
                                           const PredictedText& predicted) {
  map.Validate(reference.text.size(), predicted.chars.size());
  std::vector<int64_t> r_to_p(reference.text.size(), -1);
  for (const AlignStep& step : map.steps) {
    if (step.r >= 0 && step.p >= 0) r_to_p[static_cast<size_t>(step.r)] = step.p;
  }

  std::vector<SentenceSpan> spans;
  spans.reserve(reference.sentences.size());
  for (size_t k = 0; k < reference.sentences.size(); ++k) {
    const CharRange range = reference.sentences[k];
    SentenceSpan span{k, range, std::nullopt, std::nullopt};
    int64_t first = -1;
    int64_t last = -1;
    for (size_t i = range.begin; i <= range.end; ++i) {
      if (r_to_p[i] < 0) continue;
      if (first < 0) first = r_to_p[i];
      last = r_to_p[i];
    }
    if (first >= 0) {
      span.p_range = CharRange{static_cast<size_t>(first), static_cast<size_t>(last)};
      span.frame_range = FrameSpan{predicted.spans[static_cast<size_t>(first)].start,
                                   predicted.spans[static_cast<size_t>(last)].end};
    }
    spans.push_back(span);
  }
  return spans;
}

TimeInterval FramesToInterval(FrameSpan frames, double frame_duration_ms, double pad_ms) {
  return {std::max(0.0, static_cast<double>(frames.start) * frame_duration_ms - pad_ms),
          static_cast<double>(frames.end + 1) * frame_duration_ms + pad_ms};
}

}  // namespace longalign
