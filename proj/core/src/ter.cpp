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

#include "termeval/ter.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <set>

#include <json.hpp>

#include "termeval/parallel.hpp"

namespace termeval {

namespace {

constexpr int kMaxBlockLength = 10;
constexpr int kMaxShifts = 50;
constexpr double kEps = 1e-9;

enum Op : char { kNone, kMatch, kSub, kDel, kIns };

}  // namespace

std::vector<bool> term_mask_for(const AnnotatedSegment& seg) {
  std::vector<bool> mask(seg.reference.size(), false);
  for (const auto& occ : seg.occurrences) {
    for (int j = occ.ref_span.begin; j < occ.ref_span.end && j < static_cast<int>(mask.size());
         ++j) {
      mask[j] = true;
    }
  }
  return mask;
}

EditDpResult weighted_edit_distance(const std::vector<std::string>& hyp,
                                    const std::vector<std::string>& ref,
                                    const CostSchema& schema) {
  const int n = static_cast<int>(hyp.size());
  const int m = static_cast<int>(ref.size());
  std::vector<std::vector<double>> d(n + 1, std::vector<double>(m + 1, 0.0));
  std::vector<std::vector<char>> op(n + 1, std::vector<char>(m + 1, kNone));

  for (int j = 1; j <= m; ++j) {
    d[0][j] = d[0][j - 1] + schema.ref_token_cost(j - 1);
    op[0][j] = kDel;
  }
  for (int i = 1; i <= n; ++i) {
    d[i][0] = d[i - 1][0] + schema.base_cost;
    op[i][0] = kIns;
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= m; ++j) {
      const double ref_cost = schema.ref_token_cost(j - 1);
      const bool equal = hyp[i - 1] == ref[j - 1];
      double best;
      char best_op;
      if (equal) {
        best = d[i - 1][j - 1];
        best_op = kMatch;
      } else {
        best = d[i - 1][j - 1] + ref_cost;
        best_op = kSub;
      }
      double del = d[i][j - 1] + ref_cost;
      if (del < best - kEps) {
        best = del;
        best_op = kDel;
      }
      double ins = d[i - 1][j] + schema.base_cost;
      if (ins < best - kEps) {
        best = ins;
        best_op = kIns;
      }
      d[i][j] = best;
      op[i][j] = best_op;
    }
  }

  EditDpResult result;
  result.cost = d[n][m];
  result.hyp_to_ref.assign(n, -1);
  int i = n, j = m;
  while (i > 0 || j > 0) {
    switch (op[i][j]) {
      case kMatch:
        result.hyp_to_ref[i - 1] = j - 1;
        ++result.counts.matches;
        --i;
        --j;
        break;
      case kSub:
        ++result.counts.substitutions;
        --i;
        --j;
        break;
      case kDel:
        ++result.counts.deletions;
        --j;
        break;
      default:
        ++result.counts.insertions;
        --i;
        break;
    }
  }
  return result;
}

namespace {

std::vector<std::string> apply_shift(const std::vector<std::string>& seq, int begin, int len,
                                     int dest) {
  // dest indexes the sequence after block removal.
  std::vector<std::string> rest;
  rest.reserve(seq.size());
  rest.insert(rest.end(), seq.begin(), seq.begin() + begin);
  rest.insert(rest.end(), seq.begin() + begin + len, seq.end());
  std::vector<std::string> out;
  out.reserve(seq.size());
  out.insert(out.end(), rest.begin(), rest.begin() + dest);
  out.insert(out.end(), seq.begin() + begin, seq.begin() + begin + len);
  out.insert(out.end(), rest.begin() + dest, rest.end());
  return out;
}

double normalizer_of(const CostSchema& schema, std::size_t ref_len) {
  double total = 0.0;
  for (std::size_t j = 0; j < ref_len; ++j) total += schema.ref_token_cost(j);
  return total;
}

// Surfaces of masked reference tokens; a shifted block containing one of
// these is priced at term_cost.
std::set<std::string> masked_surfaces(const std::vector<std::string>& ref,
                                      const CostSchema& schema) {
  std::set<std::string> out;
  for (std::size_t j = 0; j < ref.size() && j < schema.term_mask.size(); ++j) {
    if (schema.term_mask[j]) out.insert(ref[j]);
  }
  return out;
}

double block_shift_cost(const std::vector<std::string>& block_begin_seq, int begin, int len,
                        const std::set<std::string>& masked, const CostSchema& schema) {
  for (int k = 0; k < len; ++k) {
    if (masked.count(block_begin_seq[begin + k])) return schema.term_cost;
  }
  return schema.base_cost;
}

}  // namespace

TerResult ter(const std::vector<std::string>& hyp, const std::vector<std::string>& ref,
              const CostSchema& schema) {
  TerResult result;
  result.normalizer = normalizer_of(schema, ref.size());

  std::vector<std::string> cur = hyp;
  EditDpResult dp = weighted_edit_distance(cur, ref, schema);
  const auto masked = masked_surfaces(ref, schema);
  const int m = static_cast<int>(ref.size());

  for (int round = 0; round < kMaxShifts; ++round) {
    const int n = static_cast<int>(cur.size());
    if (n < 2) break;

    // eq-run lengths: run[i][j] = length of the longest common block
    // starting at cur[i], ref[j].
    std::vector<std::vector<int>> run(n + 1, std::vector<int>(m + 1, 0));
    for (int i = n - 1; i >= 0; --i) {
      for (int j = m - 1; j >= 0; --j) {
        run[i][j] = cur[i] == ref[j] ? run[i + 1][j + 1] + 1 : 0;
      }
    }

    double best_gain = 0.0;
    int best_b = -1, best_len = 0, best_dest = 0;
    double best_cost_after = 0.0, best_shift_cost = 0.0;

    for (int b = 0; b < n; ++b) {
      const int max_len = std::min({kMaxBlockLength, n - b});
      for (int len = 1; len <= max_len; ++len) {
        // The block must match some reference span it is not already
        // aligned to as a straight run of matches.
        bool matches_somewhere = false;
        bool misaligned_somewhere = false;
        for (int r = 0; r + len <= m; ++r) {
          if (run[b][r] < len) continue;
          matches_somewhere = true;
          bool aligned_here = true;
          for (int k = 0; k < len; ++k) {
            if (dp.hyp_to_ref[b + k] != r + k) {
              aligned_here = false;
              break;
            }
          }
          if (!aligned_here) {
            misaligned_somewhere = true;
            break;
          }
        }
        if (!matches_somewhere) break;  // longer blocks cannot match either
        if (!misaligned_somewhere) continue;

        const double shift_cost = block_shift_cost(cur, b, len, masked, schema);
        for (int dest = 0; dest + len <= n; ++dest) {
          if (dest == b) continue;
          auto shifted = apply_shift(cur, b, len, dest);
          double cost_after = weighted_edit_distance(shifted, ref, schema).cost;
          double gain = dp.cost - cost_after - shift_cost;
          if (gain > best_gain + kEps) {
            best_gain = gain;
            best_b = b;
            best_len = len;
            best_dest = dest;
            best_cost_after = cost_after;
            best_shift_cost = shift_cost;
          }
        }
      }
    }

    if (best_b < 0) break;
    cur = apply_shift(cur, best_b, best_len, best_dest);
    result.shifts += 1;
    result.shift_cost += best_shift_cost;
    dp = weighted_edit_distance(cur, ref, schema);
    (void)best_cost_after;
  }

  result.edits = dp.counts;
  result.weighted_cost = dp.cost + result.shift_cost;
  if (!ref.empty()) result.score = result.weighted_cost / result.normalizer;
  return result;
}

namespace {

void brute_force_search(const std::vector<std::string>& cur, const std::vector<std::string>& ref,
                        const CostSchema& schema, const std::set<std::string>& masked,
                        int shifts_left, double acc_shift_cost, double& best) {
  double dp_cost = weighted_edit_distance(cur, ref, schema).cost;
  best = std::min(best, acc_shift_cost + dp_cost);
  if (shifts_left == 0) return;
  const int n = static_cast<int>(cur.size());
  for (int b = 0; b < n; ++b) {
    for (int len = 1; b + len <= n; ++len) {
      const double shift_cost = block_shift_cost(cur, b, len, masked, schema);
      for (int dest = 0; dest + len <= n; ++dest) {
        if (dest == b) continue;
        brute_force_search(apply_shift(cur, b, len, dest), ref, schema, masked, shifts_left - 1,
                           acc_shift_cost + shift_cost, best);
      }
    }
  }
}

}  // namespace

BruteForceTer brute_force_ter(const std::vector<std::string>& hyp,
                              const std::vector<std::string>& ref, const CostSchema& schema,
                              int max_shifts) {
  if (hyp.size() > 10 || ref.size() > 10 || max_shifts > 2 || max_shifts < 0) {
    throw Error("brute_force_ter: instance too large (|hyp|,|ref| <= 10, max_shifts <= 2)");
  }
  BruteForceTer result;
  result.normalizer = normalizer_of(schema, ref.size());
  double best = std::numeric_limits<double>::infinity();
  brute_force_search(hyp, ref, schema, masked_surfaces(ref, schema), max_shifts, 0.0, best);
  result.cost = best;
  result.score = ref.empty() ? 0.0 : best / result.normalizer;
  return result;
}

CorpusTer corpus_ter(const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps,
                     double term_cost, TerNormalizer normalizer, TerAverage average,
                     unsigned jobs) {
  if (corpus.segments.size() != hyps.size()) {
    throw Error("hypothesis count does not match segment count");
  }
  CorpusTer out;
  out.per_segment.resize(corpus.segments.size());
  parallel_for(corpus.segments.size(), jobs, [&](std::size_t s) {
    const auto& seg = corpus.segments[s];
    CostSchema schema;
    schema.term_cost = term_cost;
    schema.term_mask = term_mask_for(seg);
    TerResult r = ter(folded_surfaces(hyps[s].tokens), folded_surfaces(seg.reference), schema);
    if (normalizer == TerNormalizer::plain) {
      r.normalizer = static_cast<double>(seg.reference.size());
      if (!seg.reference.empty()) r.score = r.weighted_cost / r.normalizer;
    }
    out.per_segment[s] = std::move(r);
  });
  double macro_sum = 0.0;
  int scored = 0;
  for (const auto& r : out.per_segment) {
    if (!r.score) continue;  // empty reference: excluded from the average
    out.cost_sum += r.weighted_cost;
    out.normalizer_sum += r.normalizer;
    macro_sum += *r.score;
    ++scored;
  }
  if (scored > 0) {
    out.score = average == TerAverage::micro ? out.cost_sum / out.normalizer_sum
                                             : macro_sum / scored;
  }
  return out;
}

void write_ter_results(std::ostream& out, const std::vector<TerResult>& results) {
  for (std::size_t s = 0; s < results.size(); ++s) {
    const auto& r = results[s];
    nlohmann::json j;
    j["segment_id"] = s;
    j["insertions"] = r.edits.insertions;
    j["deletions"] = r.edits.deletions;
    j["substitutions"] = r.edits.substitutions;
    j["shifts"] = r.shifts;
    j["weighted_cost"] = r.weighted_cost;
    j["normalizer"] = r.normalizer;
    if (r.score) {
      j["score"] = *r.score;
      j["one_minus_score"] = 1.0 - *r.score;
    } else {
      j["score"] = nullptr;
      j["one_minus_score"] = nullptr;
    }
    out << j.dump() << "\n";
  }
}

}  // namespace termeval
