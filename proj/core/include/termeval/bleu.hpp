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

#include "termeval/alignment.hpp"
#include "termeval/corpus.hpp"

namespace termeval {

struct BleuConfig {
  enum class Smoothing { none, add_k };

  int max_ngram = 4;
  Smoothing smoothing = Smoothing::none;  // add_k applies to n > 1 only
  double add_k = 1.0;

  static BleuConfig standard() { return {}; }
  static BleuConfig phrase_level() { return {4, Smoothing::add_k, 1.0}; }
};

struct BleuStats {
  std::vector<long long> match;  // clipped n-gram matches, index n-1
  std::vector<long long> total;  // hypothesis n-gram counts
  long long hyp_len = 0;
  long long ref_len = 0;

  explicit BleuStats(int max_ngram = 4) : match(max_ngram, 0), total(max_ngram, 0) {}
  BleuStats& operator+=(const BleuStats& other);
};

BleuStats sentence_bleu_stats(const std::vector<std::string>& hyp,
                              const std::vector<std::string>& ref, int max_ngram);

// Geometric mean of modified n-gram precisions times the brevity penalty,
// as a percentage. Unsmoothed scores collapse to 0 when any precision is 0.
double bleu_score(const BleuStats& stats, const BleuConfig& config);

double corpus_bleu(const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps,
                   const BleuConfig& config = BleuConfig::standard(), unsigned jobs = 1);

// Term-centered phrase pair: the reference span padded by k words on each
// side, and the aligned hypothesis span padded the same way. A term whose
// reference span aligns to nothing gets an empty hypothesis phrase.
struct TermPhrasePair {
  std::vector<std::string> ref_phrase;  // surface forms
  std::vector<std::string> hyp_phrase;
  int entry_id = 0;
  int segment_id = 0;
};

// `alignment` links hypothesis(left) to reference(right); pass the result
// of monolingual_align or a per-segment file override.
std::vector<TermPhrasePair> extract_term_phrases(const AnnotatedSegment& seg,
                                                 const Hypothesis& hyp,
                                                 const WordAlignment& alignment, int k);

// All phrase pairs corpus-wide, in segment and occurrence order. With no
// `alignments` the built-in monolingual aligner runs per segment.
std::vector<TermPhrasePair> gather_term_phrases(
    const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps, int k,
    const std::vector<WordAlignment>* alignments = nullptr, unsigned jobs = 1);

// Pooled BLEU over the phrase-pair corpus with add-k smoothing (phrases
// are short). N/A without occurrences.
std::optional<double> term_bleu(const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps,
                                int k, const BleuConfig& config = BleuConfig::phrase_level(),
                                const std::vector<WordAlignment>* alignments = nullptr,
                                unsigned jobs = 1);

// Fraction of phrase pairs whose sides are token-for-token equal
// (casefolded), as a percentage. N/A without occurrences.
std::optional<double> exact_order_match(const EvalCorpus& corpus,
                                        const std::vector<Hypothesis>& hyps, int k,
                                        const std::vector<WordAlignment>* alignments = nullptr,
                                        unsigned jobs = 1);

}  // namespace termeval
