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

#include <benchmark/benchmark.h>

#include <random>

#include "longalign/align.h"
#include "longalign/ctc.h"
#include "longalign/mine.h"
#include "longalign/similarity.h"
#include "longalign/synth.h"

namespace longalign {
namespace {

// A random reference and a copy with 10% substitutions.
std::pair<std::u32string, std::u32string> NoisyPair(size_t n) {
  std::mt19937_64 rng(n);
  const std::u32string alphabet = DefaultSyntheticLabels().characters();
  std::u32string r(n, U' ');
  for (char32_t& c : r) c = alphabet[rng() % alphabet.size()];
  std::u32string p = r;
  for (char32_t& c : p) {
    if (rng() % 10 == 0) c = alphabet[rng() % alphabet.size()];
  }
  return {r, p};
}

void BM_Align(benchmark::State& state, AlignMode mode) {
  const auto [r, p] = NoisyPair(static_cast<size_t>(state.range(0)));
  const AlignerConfig config{ScoreParams{}, mode, uint64_t{1} << 32};
  for (auto _ : state) benchmark::DoNotOptimize(Align(r, p, config));
  state.SetComplexityN(state.range(0));
}
BENCHMARK_CAPTURE(BM_Align, full, AlignMode::kFull)
    ->RangeMultiplier(4)
    ->Range(256, 16384)
    ->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oNSquared);
BENCHMARK_CAPTURE(BM_Align, linear, AlignMode::kLinearSpace)
    ->RangeMultiplier(4)
    ->Range(256, 16384)
    ->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oNSquared);

void BM_OptimalScore(benchmark::State& state) {
  const auto [r, p] = NoisyPair(static_cast<size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(OptimalAlignmentScore(r, p, ScoreParams{}));
}
BENCHMARK(BM_OptimalScore)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_Levenshtein(benchmark::State& state) {
  const auto [r, p] = NoisyPair(static_cast<size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Levenshtein(r, p));
}
BENCHMARK(BM_Levenshtein)->Arg(64)->Arg(256);

void BM_GreedyDecodeCollapse(benchmark::State& state) {
  FaultModel fm;
  fm.seed = 1;
  const LabelSet labels = DefaultSyntheticLabels();
  const SyntheticDocument doc = Generate("b", static_cast<int>(state.range(0)), fm, labels);
  for (auto _ : state) benchmark::DoNotOptimize(Collapse(GreedyDecode(doc.emissions), labels));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(doc.emissions.frame_count()));
}
BENCHMARK(BM_GreedyDecodeCollapse)->Arg(100);

void BM_MineDocument(benchmark::State& state) {
  FaultModel fm;
  fm.sub_rate = 0.05;
  fm.untranscribed_prefix_frames = {200, 200};
  fm.untranscribed_suffix_frames = {200, 200};
  fm.interior_untranscribed_count = 1;
  fm.seed = 2;
  const LabelSet labels = DefaultSyntheticLabels();
  const SyntheticDocument doc = Generate("b", static_cast<int>(state.range(0)), fm, labels);
  for (auto _ : state) {
    benchmark::DoNotOptimize(MineDocument(doc.emissions, labels, doc.reference, MineOptions{}));
  }
}
BENCHMARK(BM_MineDocument)->Arg(20)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace longalign

BENCHMARK_MAIN();
