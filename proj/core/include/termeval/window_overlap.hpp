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

#include <optional>
#include <string>
#include <vector>

#include "termeval/corpus.hpp"
#include "termeval/term_match.hpp"

namespace termeval {

struct WindowConfig {
  int n = 2;  // content words collected on each side of the term
};

struct WindowScore {
  int segment_id = 0;
  int entry_id = 0;
  int occurrence_index = 0;
  std::vector<std::string> hyp_window;  // folded multiset, sorted
  std::vector<std::string> ref_window;
  double overlap = 0.0;
};

// Walks outward from the span collecting up to n content tokens per side
// (skipping punctuation and stopwords, truncating at sentence boundaries);
// returns the casefolded multiset as a sorted vector.
std::vector<std::string> extract_window(const std::vector<Token>& sentence, Span span, int n);

// Multiset overlap |H ∩ R| / max(|H|, |R|); 1.0 when both windows are empty.
double window_overlap_score(const std::vector<std::string>& hyp_window,
                            const std::vector<std::string>& ref_window);

struct WindowOutcome {
  AccuracyScore score;               // numerator = summed overlaps, denominator = matched terms
  std::vector<WindowScore> details;  // one row per exact-matched occurrence
};

// Scores context placement for every exact-matched occurrence in
// `matches`; unmatched occurrences do not participate.
WindowOutcome window_overlap(const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps,
                             const std::vector<MatchResult>& matches, WindowConfig config,
                             unsigned jobs = 1);

void write_window_scores(std::ostream& out, const std::vector<WindowScore>& scores);

}  // namespace termeval
