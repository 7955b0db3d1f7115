// Copyright 2026 The termeval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "termeval/analysis.hpp"
#include "support/fixtures.hpp"

using namespace termeval;
using namespace termeval::testing;

namespace {

const GeneratedFixture& fixture() {
  static const GeneratedFixture fx = make_generated_fixture(1234, {.segments = 100});
  return fx;
}

void BM_ExactMatch(benchmark::State& state) {
  const auto& fx = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_matches(fx.corpus, fx.honest));
  }
}
BENCHMARK(BM_ExactMatch);

void BM_WindowOverlap(benchmark::State& state) {
  const auto& fx = fixture();
  auto matches = compute_matches(fx.corpus, fx.honest);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        window_overlap(fx.corpus, fx.honest, matches.results, WindowConfig{2}));
  }
}
BENCHMARK(BM_WindowOverlap);

void BM_CorpusBleu(benchmark::State& state) {
  const auto& fx = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(corpus_bleu(fx.corpus, fx.honest));
  }
}
BENCHMARK(BM_CorpusBleu);

void BM_CorpusTerm(benchmark::State& state) {
  const auto& fx = fixture();
  const unsigned jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(corpus_ter(fx.corpus, fx.honest, 2.0, TerNormalizer::weighted,
                                        TerAverage::micro, jobs));
  }
}
BENCHMARK(BM_CorpusTerm)->Arg(1)->Arg(4);

void BM_TermBleu(benchmark::State& state) {
  const auto& fx = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(term_bleu(fx.corpus, fx.honest, 2));
  }
}
BENCHMARK(BM_TermBleu);

}  // namespace

BENCHMARK_MAIN();
