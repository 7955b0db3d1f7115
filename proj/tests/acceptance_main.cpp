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
//
// Acceptance suite: one self-contained check per release criterion, one
// PASS/FAIL line each. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "termeval/analysis.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace termeval;
using namespace termeval::testing;

namespace {

struct Criterion {
  int number;
  std::string name;
  double time_limit_s;
  std::function<bool(std::string&)> body;
};

bool close(double a, double b, double tol = 1e-9) { return std::fabs(a - b) <= tol; }

// 1. Worked example: exact match 100.0 / 75.0, exactly.
bool criterion_exact_match(std::string& detail) {
  auto corpus = mers_corpus();
  auto e1 = exact_match(corpus, mers_output1(corpus)).value();
  auto e2 = exact_match(corpus, mers_output2(corpus)).value();
  if (!e1 || !e2) {
    detail = "accuracy unexpectedly undefined";
    return false;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "output1=%.2f output2=%.2f", *e1 * 100, *e2 * 100);
  detail = buf;
  return *e1 * 100 == 100.0 && *e2 * 100 == 75.0;
}

// 2. Worked example: partial match 87.5, exactly.
bool criterion_partial_match(std::string& detail) {
  auto corpus = mers_corpus();
  auto p = partial_match(corpus, mers_output2(corpus)).value();
  if (!p) {
    detail = "accuracy unexpectedly undefined";
    return false;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "output2=%.2f", *p * 100);
  detail = buf;
  return *p * 100 == 87.5;
}

// 3. Worked example: the four term-centered phrase pairs at k=2.
bool criterion_phrase_extraction(std::string& detail) {
  auto corpus = mers_corpus();
  auto hyp = mers_output2(corpus)[0];
  auto alignment = monolingual_align(hyp.tokens, corpus.segments[0].reference);
  auto pairs = extract_term_phrases(corpus.segments[0], hyp, alignment, 2);
  const std::vector<std::pair<const char*, const char*>> expected = {
      {"también tenían fiebre (98%) ,", "también tenían fiebre (98%) ,"},
      {"(98%) , tos seca (47%)", "(98%) , tos (47%) y"},
      {"(98%) , tos seca (47%) y", "(98%) , tos (47%) y"},
      {"como principales síntomas .", "sus principales síntomas ."},
  };
  if (pairs.size() != expected.size()) {
    detail = "expected 4 pairs, got " + std::to_string(pairs.size());
    return false;
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (pairs[i].ref_phrase != split_ws(expected[i].first) ||
        pairs[i].hyp_phrase != split_ws(expected[i].second)) {
      detail = "pair " + std::to_string(i + 1) + " mismatch: got '" +
               join_tokens(pairs[i].ref_phrase) + " ||| " + join_tokens(pairs[i].hyp_phrase) +
               "'";
      return false;
    }
  }
  detail = "all 4 pairs token-for-token";
  return true;
}

// 4. Greedy TER against the exhaustive oracle and an independent standard
//    TER implementation.
bool criterion_ter_oracle(std::string& detail) {
  std::mt19937 rng(20210601);
  auto random_words = [&](int max_len) {
    std::vector<std::string> out;
    const int len = static_cast<int>(rng() % (max_len + 1));
    for (int i = 0; i < len; ++i) {
      out.push_back(std::string(1, static_cast<char>('a' + rng() % 5)));
    }
    return out;
  };

  int qualifying = 0, equal = 0, below = 0;
  int std_checked = 0, std_mismatch = 0;
  int attempts = 0;
  while (qualifying < 500 && attempts < 20000) {
    ++attempts;
    auto hyp = random_words(8);
    auto ref = random_words(8);
    CostSchema schema;
    schema.term_cost = 2.0;
    schema.term_mask.assign(ref.size(), false);
    for (std::size_t j = 0; j < ref.size(); ++j) {
      if (rng() % 4 == 0) schema.term_mask[j] = true;
    }

    // Independent standard-TER comparison runs on every instance.
    auto plain = ter(hyp, ref, CostSchema::standard(ref.size()));
    ++std_checked;
    if (!close(plain.weighted_cost, oracle_standard_ter_cost(hyp, ref))) ++std_mismatch;

    auto greedy = ter(hyp, ref, schema);
    if (greedy.shifts > 2) continue;  // outside the oracle's depth bound
    ++qualifying;
    auto oracle = brute_force_ter(hyp, ref, schema, 2);
    if (greedy.weighted_cost < oracle.cost - 1e-9) ++below;
    if (close(greedy.weighted_cost, oracle.cost)) ++equal;
  }

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%d instances: %.1f%% equal to oracle, %d below; standard-TER %d/%d equal",
                qualifying, 100.0 * equal / qualifying, below, std_checked - std_mismatch,
                std_checked);
  detail = buf;
  return qualifying >= 500 && below == 0 && equal >= qualifying * 95 / 100 &&
         std_mismatch == 0;
}

// 5. Cheating robustness on the generated 200-segment fixture.
bool criterion_cheating(std::string& detail) {
  auto fx = make_generated_fixture(424242, {.segments = 200});
  auto cheated = smart_cheat(fx.corpus, fx.honest);

  EvalOptions options;
  options.term_bleu_metrics = false;  // not part of this criterion
  auto honest = evaluate_system(fx.corpus, fx.honest, "honest", options).report;
  auto cheat = evaluate_system(fx.corpus, cheated, "cheat", options).report;

  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "exact %.2f->%.2f window2 %.2f->%.2f window3 %.2f->%.2f 1-TERm %.2f->%.2f "
                "BLEU %.2f->%.2f",
                *honest.exact * 100, *cheat.exact * 100, *honest.window2 * 100,
                *cheat.window2 * 100, *honest.window3 * 100, *cheat.window3 * 100,
                *honest.one_minus_term * 100, *cheat.one_minus_term * 100, *honest.bleu * 100,
                *cheat.bleu * 100);
  detail = buf;

  return *cheat.exact == 1.0 && *honest.exact < 1.0 &&
         *cheat.window2 < *honest.window2 && *cheat.window3 < *honest.window3 &&
         *cheat.one_minus_term < *honest.one_minus_term &&
         std::fabs(*cheat.bleu - *honest.bleu) * 100 < 1.0;
}

// 6. Degeneracy: echoing the reference maxes every metric, exactly.
bool criterion_degeneracy(std::string& detail) {
  auto fx = make_generated_fixture(777, {.segments = 25, .damage_rate = 0.0,
                                         .perturb_rate = 0.0});
  std::vector<Hypothesis> echo;
  for (const auto& seg : fx.corpus.segments) {
    echo.push_back(Hypothesis{seg.reference, seg.segment_id});
  }
  EvalOptions options;
  auto report = evaluate_system(fx.corpus, echo, "echo", options).report;
  detail = "bleu=" + format_percent(report.bleu) + " exact=" + format_percent(report.exact) +
           " window2=" + format_percent(report.window2) +
           " 1-TERm=" + format_percent(report.one_minus_term) +
           " term_bleu2=" + format_percent(report.term_bleu2) +
           " exact_order3=" + format_percent(report.exact_order3);
  return report.bleu && *report.bleu == 1.0 && report.exact && *report.exact == 1.0 &&
         report.partial && *report.partial == 1.0 && report.window2 && *report.window2 == 1.0 &&
         report.window3 && *report.window3 == 1.0 && report.one_minus_term &&
         *report.one_minus_term == 1.0 && report.term_bleu2 && *report.term_bleu2 == 1.0 &&
         report.term_bleu3 && *report.term_bleu3 == 1.0 && report.exact_order2 &&
         *report.exact_order2 == 1.0 && report.exact_order3 && *report.exact_order3 == 1.0;
}

// 7. Spearman against the rank-formula and full-enumeration oracles.
bool criterion_spearman(std::string& detail) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    std::vector<double> xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
      xs[i] = static_cast<double>(rng() % 5);  // small ints: ties guaranteed
      ys[i] = static_cast<double>(rng() % 5);
    }
    auto r = spearman(xs, ys);
    const double want_rho = oracle_spearman_rho(xs, ys);
    if (std::isnan(want_rho)) {
      if (r.rho) {
        detail = "rho should be undefined for a constant vector";
        return false;
      }
      continue;
    }
    if (!r.rho || std::fabs(*r.rho - want_rho) > 1e-12) {
      detail = "rho mismatch at trial " + std::to_string(trial);
      return false;
    }
    if (!r.p_value || std::fabs(*r.p_value - oracle_spearman_exact_p(xs, ys)) > 1e-12) {
      detail = "exact p mismatch at trial " + std::to_string(trial);
      return false;
    }
  }

  // The omission convention on a constructed weak-correlation table.
  std::vector<SystemReport> reports;
  const double bleu[] = {0.1, 0.2, 0.3, 0.4};
  const double exact[] = {0.2, 0.1, 0.4, 0.3};
  for (int i = 0; i < 4; ++i) {
    SystemReport r;
    r.name = "sys" + std::to_string(i);
    r.bleu = bleu[i];
    r.exact = exact[i];
    r.window3 = exact[i];
    reports.push_back(std::move(r));
  }
  auto table = render_correlation_table(metric_correlations(reports), false);
  if (table.find("--") == std::string::npos || table.find("0.6000") != std::string::npos) {
    detail = "p > 0.2 was not rendered as --";
    return false;
  }
  detail = "100 oracle trials, omission rule holds";
  return true;
}

// 8. Order invariants and worker-count independence over 1000 random
//    corpora.
bool criterion_invariants(std::string& detail) {
  EvalOptions serial;
  serial.jobs = 1;
  EvalOptions threaded;
  threaded.jobs = 8;
  auto in_unit = [](const std::optional<double>& v) {
    return !v || (*v >= -1e-12 && *v <= 1.0 + 1e-12);
  };
  for (std::uint32_t seed = 1; seed <= 1000; ++seed) {
    auto fx = make_small_random_fixture(seed);
    auto a = evaluate_system(fx.corpus, fx.honest, "sys", serial);
    auto b = evaluate_system(fx.corpus, fx.honest, "sys", threaded);
    if (render_report_tsv({a.report}) != render_report_tsv({b.report})) {
      detail = "jobs=1 vs jobs=8 rendering mismatch at seed " + std::to_string(seed);
      return false;
    }
    const auto& m = a.matches;
    if (m.exact.numerator > m.partial.numerator + 1e-9 ||
        m.rp.numerator > m.partial.numerator + 1e-9) {
      detail = "accuracy ordering violated at seed " + std::to_string(seed);
      return false;
    }
    const auto& r = a.report;
    const bool ranges =
        in_unit(r.bleu) && in_unit(r.exact) && in_unit(r.partial) && in_unit(r.rp) &&
        in_unit(r.window2) && in_unit(r.window3) && in_unit(r.term_bleu2) &&
        in_unit(r.term_bleu3) && in_unit(r.exact_order2) && in_unit(r.exact_order3) &&
        (!r.one_minus_term || *r.one_minus_term <= 1.0 + 1e-12) &&
        (!r.one_minus_ter || *r.one_minus_ter <= 1.0 + 1e-12);
    if (!ranges) {
      detail = "score out of range at seed " + std::to_string(seed);
      return false;
    }
  }
  detail = "1000 corpora clean";
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "exact-match worked example (100.0 / 75.0)", 1.0, criterion_exact_match},
      {2, "partial-match worked example (87.5)", 1.0, criterion_partial_match},
      {3, "term-centered phrase extraction (4 pairs, k=2)", 1.0, criterion_phrase_extraction},
      {4, "greedy TER vs exhaustive and standard oracles", 30.0, criterion_ter_oracle},
      {5, "cheating robustness on the 200-segment fixture", 60.0, criterion_cheating},
      {6, "degeneracy: echoed reference maxes every metric", 60.0, criterion_degeneracy},
      {7, "Spearman correctness and omission rule", 30.0, criterion_spearman},
      {8, "invariants + parallelism independence (1000 corpora)", 120.0,
       criterion_invariants},
  };
  int failures = 0;
  for (auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > c.time_limit_s) {
      ok = false;
      detail += " [exceeded " + std::to_string(c.time_limit_s) + "s]";
    }
    std::printf("criterion %d [%s] %s — %s (%.2fs)\n", c.number, ok ? "PASS" : "FAIL",
                c.name.c_str(), detail.c_str(), elapsed);
    if (!ok) ++failures;
  }
  return failures;
}
