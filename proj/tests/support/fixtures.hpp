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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "termeval/analysis.hpp"
#include "termeval/corpus.hpp"

namespace termeval::testing {

// --- the worked MERS-CoV example ------------------------------------------------

StopwordSet spanish_stopwords();
Terminology mers_terminology();  // fever/cough/dry cough/symptoms, ids 1..4

// One-segment corpus: the annotated English/Spanish sentence pair.
EvalCorpus mers_corpus();

// The two example system outputs; output 1 renders every term, output 2
// drops "seca".
std::vector<Hypothesis> mers_output1(const EvalCorpus& corpus);
std::vector<Hypothesis> mers_output2(const EvalCorpus& corpus);

std::string mers_tagged_source();
std::string mers_tagged_reference();
std::vector<std::string> mers_source_tokens();
std::vector<std::string> mers_reference_tokens();

Hypothesis make_hypothesis(const std::string& line, const StopwordSet& stopwords,
                           int segment_id);

// --- generated corpora ------------------------------------------------------------

struct FixtureOptions {
  int segments = 200;
  double damage_rate = 0.25;   // fraction of segments with a broken term
  double perturb_rate = 0.7;   // harmless filler substitution away from terms
  int min_fillers = 8;
  int max_fillers = 14;
  int max_terms_per_segment = 2;
};

struct GeneratedFixture {
  EvalCorpus corpus;
  std::vector<Hypothesis> honest;  // reference-like outputs with controlled damage
};

// Honest outputs keep every produced term in its reference context; damaged
// segments drop one word of a multi-word term or garble a single-word term.
// Deterministic in the seed.
GeneratedFixture make_generated_fixture(std::uint32_t seed, const FixtureOptions& options = {});

// Small random corpus for property suites: occasional identity hypotheses
// and empty lines included.
GeneratedFixture make_small_random_fixture(std::uint32_t seed);

}  // namespace termeval::testing
