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

#include "termeval/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "termeval/parallel.hpp"

namespace termeval {

namespace {

// n-grams keyed by joining tokens with an unlikely separator byte.
std::unordered_map<std::string, int> ngram_counts(const std::vector<std::string>& tokens, int n) {
  std::unordered_map<std::string, int> counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (int k = 0; k < n; ++k) {
      if (k) key.push_back('\x1f');
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

std::vector<std::string> fold_all(const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(casefold(t));
  return out;
}

}  // namespace

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  if (match.size() != other.match.size()) throw Error("mixing BLEU stats of different orders");
  for (std::size_t i = 0; i < match.size(); ++i) {
    match[i] += other.match[i];
    total[i] += other.total[i];
  }
  hyp_len += other.hyp_len;
  ref_len += other.ref_len;
  return *this;
}

BleuStats sentence_bleu_stats(const std::vector<std::string>& hyp,
                              const std::vector<std::string>& ref, int max_ngram) {
  BleuStats stats(max_ngram);
  stats.hyp_len = static_cast<long long>(hyp.size());
  stats.ref_len = static_cast<long long>(ref.size());
  for (int n = 1; n <= max_ngram; ++n) {
    auto hyp_counts = ngram_counts(hyp, n);
    if (hyp_counts.empty()) continue;
    auto ref_counts = ngram_counts(ref, n);
    long long total = 0, matched = 0;
    for (const auto& [key, count] : hyp_counts) {
      total += count;
      auto it = ref_counts.find(key);
      if (it != ref_counts.end()) matched += std::min(count, it->second);
    }
    stats.total[n - 1] = total;
    stats.match[n - 1] = matched;
  }
  return stats;
}

double bleu_score(const BleuStats& stats, const BleuConfig& config) {
  if (stats.hyp_len == 0) return 0.0;
  double log_sum = 0.0;
  for (int n = 1; n <= config.max_ngram; ++n) {
    const double m = static_cast<double>(stats.match[n - 1]);
    const double t = static_cast<double>(stats.total[n - 1]);
    double p;
    if (config.smoothing == BleuConfig::Smoothing::add_k && n > 1) {
      p = (m + config.add_k) / (t + config.add_k);
    } else {
      p = t > 0 ? m / t : 0.0;
    }
    if (p <= 0.0) return 0.0;
    log_sum += std::log(p);
  }
  const double bp = stats.hyp_len >= stats.ref_len
                        ? 1.0
                        : std::exp(1.0 - static_cast<double>(stats.ref_len) /
                                             static_cast<double>(stats.hyp_len));
  return 100.0 * bp * std::exp(log_sum / config.max_ngram);
}

double corpus_bleu(const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps,
                   const BleuConfig& config, unsigned jobs) {
  if (corpus.segments.empty()) throw Error("BLEU over an empty corpus");
  if (corpus.segments.size() != hyps.size()) {
    throw Error("hypothesis count does not match segment count");
  }
  std::vector<BleuStats> per_segment(corpus.segments.size(), BleuStats(config.max_ngram));
  parallel_for(corpus.segments.size(), jobs, [&](std::size_t s) {
    per_segment[s] = sentence_bleu_stats(folded_surfaces(hyps[s].tokens),
                                         folded_surfaces(corpus.segments[s].reference),
                                         config.max_ngram);
  });
  BleuStats pooled(config.max_ngram);
  for (const auto& st : per_segment) pooled += st;
  return bleu_score(pooled, config);
}

std::vector<TermPhrasePair> extract_term_phrases(const AnnotatedSegment& seg,
                                                 const Hypothesis& hyp,
                                                 const WordAlignment& alignment, int k) {
  std::vector<TermPhrasePair> out;
  const int hyp_len = static_cast<int>(hyp.tokens.size());
  const int ref_len = static_cast<int>(seg.reference.size());
  for (const auto& occ : seg.occurrences) {
    TermPhrasePair pair;
    pair.entry_id = occ.entry_id;
    pair.segment_id = seg.segment_id;
    const int rb = std::max(0, occ.ref_span.begin - k);
    const int re = std::min(ref_len, occ.ref_span.end + k);
    for (int j = rb; j < re; ++j) pair.ref_phrase.push_back(seg.reference[j].surface);
    ProjectedSpan proj = project_span(occ.ref_span, alignment, Side::right, hyp_len);
    if (!proj.empty) {
      const int hb = std::max(0, proj.lo - k);
      const int he = std::min(hyp_len, proj.hi + 1 + k);
      for (int i = hb; i < he; ++i) pair.hyp_phrase.push_back(hyp.tokens[i].surface);
    }
    out.push_back(std::move(pair));
  }
  return out;
}

std::vector<TermPhrasePair> gather_term_phrases(const EvalCorpus& corpus,
                                                const std::vector<Hypothesis>& hyps, int k,
                                                const std::vector<WordAlignment>* alignments,
                                                unsigned jobs) {
  if (corpus.segments.size() != hyps.size()) {
    throw Error("hypothesis count does not match segment count");
  }
  if (alignments && alignments->size() != corpus.segments.size()) {
    throw Error("alignment count does not match segment count");
  }
  std::vector<std::vector<TermPhrasePair>> per_segment(corpus.segments.size());
  parallel_for(corpus.segments.size(), jobs, [&](std::size_t s) {
    const WordAlignment a = alignments
                                ? (*alignments)[s]
                                : monolingual_align(hyps[s].tokens, corpus.segments[s].reference);
    per_segment[s] = extract_term_phrases(corpus.segments[s], hyps[s], a, k);
  });
  std::vector<TermPhrasePair> out;
  for (auto& v : per_segment) {
    for (auto& p : v) out.push_back(std::move(p));
  }
  return out;
}

std::optional<double> term_bleu(const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps,
                                int k, const BleuConfig& config,
                                const std::vector<WordAlignment>* alignments, unsigned jobs) {
  auto pairs = gather_term_phrases(corpus, hyps, k, alignments, jobs);
  if (pairs.empty()) return std::nullopt;
  BleuStats pooled(config.max_ngram);
  for (const auto& pair : pairs) {
    pooled += sentence_bleu_stats(fold_all(pair.hyp_phrase), fold_all(pair.ref_phrase),
                                  config.max_ngram);
  }
  return bleu_score(pooled, config);
}

std::optional<double> exact_order_match(const EvalCorpus& corpus,
                                        const std::vector<Hypothesis>& hyps, int k,
                                        const std::vector<WordAlignment>* alignments,
                                        unsigned jobs) {
  auto pairs = gather_term_phrases(corpus, hyps, k, alignments, jobs);
  if (pairs.empty()) return std::nullopt;
  long long equal = 0;
  for (const auto& pair : pairs) {
    if (fold_all(pair.hyp_phrase) == fold_all(pair.ref_phrase)) ++equal;
  }
  return 100.0 * static_cast<double>(equal) / static_cast<double>(pairs.size());
}

}  // namespace termeval
