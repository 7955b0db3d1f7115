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

#include "termeval/common.hpp"
#include "termeval/corpus.hpp"

namespace termeval {

// Edit pricing for the terminology-biased TER variant. Reference tokens
// under the mask (those inside a term span) make substitutions and
// deletions cost `term_cost`; so do shifts of blocks carrying a masked
// token's surface. Plain TER is term_cost == base_cost with an all-false
// mask.
struct CostSchema {
  double base_cost = 1.0;
  double term_cost = 2.0;
  std::vector<bool> term_mask;  // one flag per reference token

  static CostSchema standard(std::size_t ref_len) {
    return CostSchema{1.0, 1.0, std::vector<bool>(ref_len, false)};
  }
  double ref_token_cost(std::size_t j) const {
    return j < term_mask.size() && term_mask[j] ? term_cost : base_cost;
  }
};

// Mask covering every reference token inside any occurrence's span.
std::vector<bool> term_mask_for(const AnnotatedSegment& seg);

struct EditCounts {
  int insertions = 0;     // hypothesis tokens with no reference counterpart
  int deletions = 0;      // reference tokens with no hypothesis counterpart
  int substitutions = 0;
  int matches = 0;
};

struct EditDpResult {
  double cost = 0.0;
  EditCounts counts;
  // hyp_to_ref[i] = reference index hypothesis token i matches exactly
  // under the chosen alignment, -1 otherwise.
  std::vector<int> hyp_to_ref;
};

// Minimum-cost monotone alignment: match 0, substitution/deletion of a
// masked reference token term_cost (base otherwise), insertion base.
// Tie-break prefers match > substitution > deletion > insertion.
EditDpResult weighted_edit_distance(const std::vector<std::string>& hyp,
                                    const std::vector<std::string>& ref,
                                    const CostSchema& schema);

struct TerResult {
  EditCounts edits;
  int shifts = 0;
  double shift_cost = 0.0;     // summed cost of applied shifts
  double weighted_cost = 0.0;  // shift cost + residual edit distance
  double normalizer = 0.0;     // schema-weighted reference length
  std::optional<double> score;  // weighted_cost / normalizer; N/A on empty reference

  std::optional<double> one_minus_score() const {
    if (!score) return std::nullopt;
    return 1.0 - *score;
  }
};

// Snover-style greedy shift search over the weighted edit distance: apply
// the block move with the largest net gain (edit-distance reduction minus
// the shift's cost) until none helps. Candidate blocks must exactly match
// a reference subsequence they are not already aligned to; block length is
// capped at 10 and total shifts at 50.
TerResult ter(const std::vector<std::string>& hyp, const std::vector<std::string>& ref,
              const CostSchema& schema);

struct BruteForceTer {
  double cost = 0.0;
  double normalizer = 0.0;
  double score = 0.0;
};

// Exhaustive oracle: every block, every insertion point, up to max_shifts
// moves, each sequence finished with the DP. Sizes are capped (|hyp|, |ref|
// <= 10, max_shifts <= 2); test use only.
BruteForceTer brute_force_ter(const std::vector<std::string>& hyp,
                              const std::vector<std::string>& ref, const CostSchema& schema,
                              int max_shifts);

enum class TerNormalizer { weighted, plain };
enum class TerAverage { micro, macro };

struct CorpusTer {
  std::vector<TerResult> per_segment;
  double cost_sum = 0.0;
  double normalizer_sum = 0.0;
  std::optional<double> score;  // micro or macro TER per options

  std::optional<double> one_minus_score() const {
    if (!score) return std::nullopt;
    return 1.0 - *score;
  }
};

CorpusTer corpus_ter(const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps,
                     double term_cost, TerNormalizer normalizer = TerNormalizer::weighted,
                     TerAverage average = TerAverage::micro, unsigned jobs = 1);

void write_ter_results(std::ostream& out, const std::vector<TerResult>& results);

}  // namespace termeval
