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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "termeval/bleu.hpp"
#include "termeval/corpus.hpp"
#include "termeval/term_match.hpp"
#include "termeval/ter.hpp"
#include "termeval/window_overlap.hpp"

namespace termeval {

// --- adversarial baselines ---------------------------------------------------

// Appends the target tokens of every occurrence the hypothesis failed to
// exact-match, space-joined in occurrence order at the end of the output.
// Already-matched terms are untouched.
std::vector<Hypothesis> smart_cheat(const EvalCorpus& corpus,
                                    const std::vector<Hypothesis>& hyps);

// Appends every occurrence's target tokens regardless of presence.
std::vector<Hypothesis> naive_cheat(const EvalCorpus& corpus,
                                    const std::vector<Hypothesis>& hyps);

// --- rank correlation --------------------------------------------------------

struct CorrelationResult {
  std::optional<double> rho;      // N/A when either vector is constant
  std::optional<double> p_value;  // two-sided
  int n = 0;
};

// Spearman's rho with average ranks for ties. Exact permutation p-value up
// to n == 8, Student-t approximation beyond. Throws for n < 3.
CorrelationResult spearman(const std::vector<double>& xs, const std::vector<double>& ys);

// Fractional ranks (1-based, ties averaged); exposed for the oracle tests.
std::vector<double> average_ranks(const std::vector<double>& values);

// --- terminology match census (surface vs lemma) ------------------------------

struct MatchCensus {
  int surface_matches = 0;
  std::optional<int> lemma_additional;  // N/A without lemma input
  int total = 0;
};

MatchCensus match_census(const AnnotateResult& surface, const AnnotateResult* lemma);

// --- corpus-level reports -----------------------------------------------------

// All metric values are fractions in [0, 1]; rendering multiplies by 100
// and keeps 2 decimals. Missing values render as N/A.
struct SystemReport {
  std::string name;
  std::optional<double> bleu;
  std::optional<double> exact;
  std::optional<double> partial;
  std::optional<double> rp;
  std::optional<double> window2;
  std::optional<double> window3;
  std::optional<double> one_minus_ter;   // standard TER, C_term == 1
  std::optional<double> one_minus_term;  // terminology-biased
  std::optional<double> alignment;
  std::optional<double> term_bleu2;
  std::optional<double> term_bleu3;
  std::optional<double> exact_order2;
  std::optional<double> exact_order3;
  bool is_cheating = false;
};

std::string render_report_tsv(const std::vector<SystemReport>& reports);
std::vector<SystemReport> parse_report_tsv(std::istream& in);
std::vector<SystemReport> parse_report_tsv_file(const std::string& path);
std::string render_report_markdown(const std::vector<SystemReport>& reports);

// Fixed-format percentage used across all report surfaces.
std::string format_percent(std::optional<double> fraction);

// --- system correlations (Table-8-style) --------------------------------------

struct CorrelationCell {
  std::string metric_x;
  std::string metric_y;
  CorrelationResult result;
};

// Spearman over systems for (BLEU, exact match), (BLEU, window-3) and
// (exact match, window-3). Requires at least 3 systems carrying each pair.
std::vector<CorrelationCell> metric_correlations(const std::vector<SystemReport>& reports);

// One line per pair: rho to 4 decimals, '*' when p < 0.1, suppressed as
// "--" when p > 0.2 unless show_all.
std::string render_correlation_table(const std::vector<CorrelationCell>& cells, bool show_all);

// --- whole-system evaluation ---------------------------------------------------

struct EvalOptions {
  std::vector<int> windows{2, 3};
  std::vector<int> ks{2, 3};
  double c_term = 2.0;
  TerNormalizer ter_normalizer = TerNormalizer::weighted;
  TerAverage ter_average = TerAverage::micro;
  bool term_bleu_metrics = true;  // Term-BLEU / exact order via the built-in aligner
  unsigned jobs = 1;
};

struct SystemEvaluation {
  SystemReport report;
  MatchOutcome matches;
  std::map<int, WindowOutcome> windows;  // window size -> outcome
  CorpusTer term_ter;                    // C_term-priced
  CorpusTer std_ter;                     // standard costs
  std::map<int, std::vector<TermPhrasePair>> phrases;  // k -> pairs
};

// Computes every selected metric for one system. `bilingual_alignments`
// (source<->hypothesis) enable the alignment-based partial match;
// `monolingual_alignments` (hypothesis<->reference) override the built-in
// aligner for the phrase metrics.
SystemEvaluation evaluate_system(const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps,
                                 const std::string& name, const EvalOptions& options,
                                 const std::vector<WordAlignment>* bilingual_alignments = nullptr,
                                 const std::vector<WordAlignment>* monolingual_alignments = nullptr);

}  // namespace termeval
