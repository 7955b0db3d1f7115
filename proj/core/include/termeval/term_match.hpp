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

#include <iosfwd>
#include <optional>
#include <vector>

#include "termeval/alignment.hpp"
#include "termeval/corpus.hpp"

namespace termeval {

// Per-occurrence outcome across the term accuracy family.
struct MatchResult {
  int segment_id = 0;
  int entry_id = 0;
  int occurrence_index = 0;  // position within the segment's occurrence list
  bool matched = false;      // exact: contiguous target found in the hypothesis
  std::optional<Span> hyp_span;
  double partial_credit = 0.0;  // fraction of term words present, in [0,1]
  double rp_credit = 0.0;       // partial credit discounted by reordering
};

// numerator / denominator accuracy; undefined (N/A) with no occurrences.
struct AccuracyScore {
  double numerator = 0.0;
  int denominator = 0;

  std::optional<double> value() const {
    if (denominator == 0) return std::nullopt;
    return numerator / denominator;
  }
};

// Reordering discount for a word at 1-based hypothesis position i and
// reference position j: 1 - |i/hyp_len - j/ref_len|.
double reordering_penalty(int i, int j, int hyp_len, int ref_len);

// Exact, partial and reordering-weighted credits for one segment, computed
// in one pass. Occurrences of the same entry compete for distinct
// hypothesis spans (exact) and for the hypothesis word budget (partial);
// occurrences of different entries may reuse tokens, as nested annotations
// require.
std::vector<MatchResult> segment_matches(const AnnotatedSegment& seg, const Hypothesis& hyp,
                                         const Terminology& terminology);

struct MatchOutcome {
  AccuracyScore exact;
  AccuracyScore partial;
  AccuracyScore rp;
  std::vector<MatchResult> results;  // segment order, then occurrence order
};

MatchOutcome compute_matches(const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps,
                             unsigned jobs = 1);

AccuracyScore exact_match(const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps,
                          unsigned jobs = 1);
AccuracyScore partial_match(const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps,
                            unsigned jobs = 1);
AccuracyScore rp_match(const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps,
                       unsigned jobs = 1);

// Partial credit restricted to hypothesis tokens the alignment links to the
// occurrence's source span. Alignments are source(left)<->hypothesis(right),
// one per segment.
AccuracyScore alignment_match(const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps,
                              const std::vector<WordAlignment>& alignments, unsigned jobs = 1);

// Line-delimited JSON export of per-term results (the human-study feed).
void write_match_results(std::ostream& out, const std::vector<MatchResult>& results);

}  // namespace termeval
