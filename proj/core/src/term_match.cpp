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

#include "termeval/term_match.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include <json.hpp>

#include "termeval/parallel.hpp"

namespace termeval {

namespace {

std::vector<std::string> folded_entry_targets(const TermEntry& entry) {
  std::vector<std::string> out;
  out.reserve(entry.target_tokens.size());
  for (const auto& t : entry.target_tokens) out.push_back(casefold(t));
  return out;
}

// All start positions where the folded target matches contiguously.
std::vector<int> match_starts(const std::vector<Token>& hyp,
                              const std::vector<std::string>& target) {
  std::vector<int> out;
  const int n = static_cast<int>(hyp.size());
  const int m = static_cast<int>(target.size());
  for (int i = 0; i + m <= n; ++i) {
    bool hit = true;
    for (int k = 0; k < m; ++k) {
      if (hyp[i + k].folded != target[k]) {
        hit = false;
        break;
      }
    }
    if (hit) out.push_back(i);
  }
  return out;
}

std::map<std::string, int> count_types(const std::vector<std::string>& words) {
  std::map<std::string, int> counts;
  for (const auto& w : words) ++counts[w];
  return counts;
}

std::map<std::string, int> hyp_type_counts(const std::vector<Token>& hyp) {
  std::map<std::string, int> counts;
  for (const auto& t : hyp) ++counts[t.folded];
  return counts;
}

void check_lengths(const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps) {
  if (corpus.segments.size() != hyps.size()) {
    throw Error("hypothesis count " + std::to_string(hyps.size()) +
                " does not match segment count " + std::to_string(corpus.segments.size()));
  }
}

}  // namespace

double reordering_penalty(int i, int j, int hyp_len, int ref_len) {
  double ri = static_cast<double>(i) / hyp_len;
  double rj = static_cast<double>(j) / ref_len;
  return 1.0 - std::fabs(ri - rj);
}

std::vector<MatchResult> segment_matches(const AnnotatedSegment& seg, const Hypothesis& hyp,
                                         const Terminology& terminology) {
  std::vector<MatchResult> results(seg.occurrences.size());
  for (std::size_t o = 0; o < seg.occurrences.size(); ++o) {
    results[o].segment_id = seg.segment_id;
    results[o].entry_id = seg.occurrences[o].entry_id;
    results[o].occurrence_index = static_cast<int>(o);
  }

  // Same-entry occurrences compete for hypothesis material; different
  // entries never interact (nested annotations share tokens freely).
  std::map<int, std::vector<std::size_t>> by_entry;
  for (std::size_t o = 0; o < seg.occurrences.size(); ++o) {
    by_entry[seg.occurrences[o].entry_id].push_back(o);
  }

  // Positions of each folded surface (1-based), for the reordering penalty.
  std::map<std::string, std::vector<int>> hyp_positions, ref_positions;
  for (std::size_t i = 0; i < hyp.tokens.size(); ++i) {
    hyp_positions[hyp.tokens[i].folded].push_back(static_cast<int>(i) + 1);
  }
  for (std::size_t j = 0; j < seg.reference.size(); ++j) {
    ref_positions[seg.reference[j].folded].push_back(static_cast<int>(j) + 1);
  }
  const int hyp_len = static_cast<int>(hyp.tokens.size());
  const int ref_len = static_cast<int>(seg.reference.size());
  const auto full_budget = hyp_type_counts(hyp.tokens);

  for (auto& [entry_id, members] : by_entry) {
    const TermEntry* entry = terminology.find(entry_id);
    if (!entry) throw Error("unknown terminology entry id " + std::to_string(entry_id));
    // The k-th source occurrence claims the k-th hypothesis match.
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      return seg.occurrences[a].src_span < seg.occurrences[b].src_span;
    });
    const auto target = folded_entry_targets(*entry);
    const int m = static_cast<int>(target.size());

    // Exact match: greedy left-to-right; repeated occurrences must consume
    // disjoint hypothesis spans.
    std::size_t next_member = 0;
    int last_end = -1;
    for (int p : match_starts(hyp.tokens, target)) {
      if (next_member >= members.size()) break;
      if (p < last_end) continue;
      results[members[next_member]].matched = true;
      results[members[next_member]].hyp_span = Span{p, p + m};
      last_end = p + m;
      ++next_member;
    }

    // Partial / RP credit: each occurrence draws term words from a shared
    // per-entry budget of hypothesis tokens, so one emitted token is never
    // credited twice to the same entry. Matched occurrences come first in
    // member order, keeping matched => partial_credit == 1.
    auto budget = full_budget;
    const auto need = count_types(target);
    for (std::size_t idx : members) {
      double taken = 0.0;
      double rp_sum = 0.0;
      for (const auto& [word, n] : need) {
        auto it = budget.find(word);
        int take = it == budget.end() ? 0 : std::min(n, it->second);
        if (take == 0) continue;
        it->second -= take;
        taken += take;
        // Optimistic pairing: the best reordering penalty over all
        // hypothesis/reference positions of this word.
        double best = 0.0;
        auto rj = ref_positions.find(word);
        if (rj != ref_positions.end()) {
          for (int i : hyp_positions[word]) {
            for (int j : rj->second) {
              best = std::max(best, reordering_penalty(i, j, hyp_len, ref_len));
            }
          }
        }
        rp_sum += take * best;
      }
      results[idx].partial_credit = taken / m;
      results[idx].rp_credit = rp_sum / m;
    }
  }

  return results;
}

namespace {

struct SegmentAccumulator {
  double partial = 0.0;
  int occurrences = 0;
};

}  // namespace

MatchOutcome compute_matches(const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps,
                             unsigned jobs) {
  check_lengths(corpus, hyps);
  std::vector<std::vector<MatchResult>> per_segment(corpus.segments.size());
  parallel_for(corpus.segments.size(), jobs, [&](std::size_t s) {
    per_segment[s] = segment_matches(corpus.segments[s], hyps[s], corpus.terminology);
  });

  MatchOutcome out;
  for (auto& seg_results : per_segment) {
    for (auto& r : seg_results) {
      out.exact.numerator += r.matched ? 1.0 : 0.0;
      out.partial.numerator += r.partial_credit;
      out.rp.numerator += r.rp_credit;
      out.results.push_back(std::move(r));
    }
  }
  const int total = static_cast<int>(out.results.size());
  out.exact.denominator = out.partial.denominator = out.rp.denominator = total;
  return out;
}

AccuracyScore exact_match(const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps,
                          unsigned jobs) {
  return compute_matches(corpus, hyps, jobs).exact;
}

AccuracyScore partial_match(const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps,
                            unsigned jobs) {
  return compute_matches(corpus, hyps, jobs).partial;
}

AccuracyScore rp_match(const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps,
                       unsigned jobs) {
  return compute_matches(corpus, hyps, jobs).rp;
}

AccuracyScore alignment_match(const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps,
                              const std::vector<WordAlignment>& alignments, unsigned jobs) {
  check_lengths(corpus, hyps);
  if (alignments.size() != corpus.segments.size()) {
    throw Error("alignment count " + std::to_string(alignments.size()) +
                " does not match segment count " + std::to_string(corpus.segments.size()));
  }
  std::vector<SegmentAccumulator> acc(corpus.segments.size());
  parallel_for(corpus.segments.size(), jobs, [&](std::size_t s) {
    const auto& seg = corpus.segments[s];
    const auto& hyp = hyps[s];
    for (const auto& occ : seg.occurrences) {
      const TermEntry* entry = corpus.terminology.find(occ.entry_id);
      if (!entry) throw Error("unknown entry id " + std::to_string(occ.entry_id));
      auto hyp_indices = linked_indices(occ.src_span, alignments[s], Side::left);
      for (int idx : hyp_indices) {
        if (idx < 0 || idx >= static_cast<int>(hyp.tokens.size())) {
          throw Error("segment " + std::to_string(seg.segment_id) +
                      ": alignment link to hypothesis token " + std::to_string(idx) +
                      " out of bounds");
        }
      }
      std::map<std::string, int> candidate_counts;
      for (int idx : hyp_indices) ++candidate_counts[hyp.tokens[idx].folded];
      auto need = count_types(folded_entry_targets(*entry));
      double found = 0.0;
      for (const auto& [word, n] : need) {
        auto it = candidate_counts.find(word);
        if (it != candidate_counts.end()) found += std::min(n, it->second);
      }
      acc[s].partial += found / static_cast<double>(entry->target_tokens.size());
      ++acc[s].occurrences;
    }
  });
  AccuracyScore score;
  for (const auto& a : acc) {
    score.numerator += a.partial;
    score.denominator += a.occurrences;
  }
  return score;
}

void write_match_results(std::ostream& out, const std::vector<MatchResult>& results) {
  for (const auto& r : results) {
    nlohmann::json j;
    j["segment_id"] = r.segment_id;
    j["entry_id"] = r.entry_id;
    j["occurrence_index"] = r.occurrence_index;
    j["matched"] = r.matched;
    if (r.hyp_span) {
      j["hyp_span"] = {r.hyp_span->begin, r.hyp_span->end};
    } else {
      j["hyp_span"] = nullptr;
    }
    j["partial_credit"] = r.partial_credit;
    j["rp_credit"] = r.rp_credit;
    out << j.dump() << "\n";
  }
}

}  // namespace termeval
