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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "support/fixtures.hpp"

using namespace termeval;
using namespace termeval::testing;

namespace {

EvalCorpus one_entry_corpus(const std::string& src, const std::string& ref,
                            const std::vector<TermOccurrence>& occurrences,
                            std::vector<TermEntry> entries) {
  EvalCorpus corpus;
  corpus.terminology.entries = std::move(entries);
  AnnotatedSegment seg;
  seg.segment_id = 0;
  seg.source = tokenize(src, {});
  seg.reference = tokenize(ref, {});
  seg.occurrences = occurrences;
  canonicalize_occurrences(seg.occurrences);
  corpus.segments.push_back(std::move(seg));
  corpus.validate();
  return corpus;
}

}  // namespace

TEST_CASE("worked example: exact match 100 vs 75") {
  auto corpus = mers_corpus();
  auto exact1 = exact_match(corpus, mers_output1(corpus));
  REQUIRE(exact1.value());
  CHECK(*exact1.value() == doctest::Approx(1.0).epsilon(1e-12));

  auto exact2 = exact_match(corpus, mers_output2(corpus));
  REQUIRE(exact2.value());
  CHECK(*exact2.value() == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("repeated source terms need distinct hypothesis spans") {
  auto corpus = one_entry_corpus("cough x cough", "tos x tos",
                                 {{1, {0, 1}, {0, 1}}, {1, {2, 3}, {2, 3}}},
                                 {{{"cough"}, {"tos"}, 1}});
  auto hyp = make_hypothesis("hay tos aqui", corpus.stopwords, 0);
  auto outcome = compute_matches(corpus, {hyp});
  CHECK(outcome.exact.numerator == doctest::Approx(1.0));
  CHECK(outcome.exact.denominator == 2);
  // Both spans available: both occurrences match.
  auto hyp2 = make_hypothesis("tos y mas tos", corpus.stopwords, 0);
  CHECK(compute_matches(corpus, {hyp2}).exact.numerator == doctest::Approx(2.0));
}

TEST_CASE("worked example: partial match 87.5") {
  auto corpus = mers_corpus();
  auto partial = partial_match(corpus, mers_output2(corpus));
  REQUIRE(partial.value());
  CHECK(*partial.value() == doctest::Approx(0.875).epsilon(1e-12));
  // Output 1 has every word: partial stays at 100%.
  CHECK(*partial_match(corpus, mers_output1(corpus)).value() == doctest::Approx(1.0));
}

TEST_CASE("partial match extremes") {
  auto corpus = one_entry_corpus("dry cough", "tos seca",
                                 {{1, {0, 2}, {0, 2}}}, {{{"dry", "cough"}, {"tos", "seca"}, 1}});
  auto all = make_hypothesis("seca tos", corpus.stopwords, 0);
  CHECK(*partial_match(corpus, {all}).value() == doctest::Approx(1.0));
  auto none = make_hypothesis("nada que ver", corpus.stopwords, 0);
  CHECK(*partial_match(corpus, {none}).value() == doctest::Approx(0.0));
}

TEST_CASE("reordering penalty formula") {
  CHECK(reordering_penalty(2, 2, 4, 4) == doctest::Approx(1.0));
  CHECK(reordering_penalty(2, 2, 4, 5) == doctest::Approx(0.9));
  // First hypothesis word against the last word of a long reference.
  CHECK(reordering_penalty(1, 10, 10, 10) == doctest::Approx(1.0 - 0.9));
}

TEST_CASE("rp equals partial when positions agree, drops when terms move") {
  auto corpus = one_entry_corpus("cough here", "tos aqui bien",
                                 {{1, {0, 1}, {0, 1}}}, {{{"cough"}, {"tos"}, 1}});
  // Identical to the reference: full credit.
  auto echo = make_hypothesis("tos aqui bien", corpus.stopwords, 0);
  auto outcome = compute_matches(corpus, {echo});
  CHECK(outcome.rp.numerator == doctest::Approx(outcome.partial.numerator));
  CHECK(outcome.rp.numerator == doctest::Approx(1.0));

  // Term appended at the end: |3/3 - 1/3| penalty by hand.
  auto moved = make_hypothesis("aqui bien tos", corpus.stopwords, 0);
  auto moved_outcome = compute_matches(corpus, {moved});
  CHECK(moved_outcome.partial.numerator == doctest::Approx(1.0));
  CHECK(moved_outcome.rp.numerator == doctest::Approx(1.0 - (3.0 / 3.0 - 1.0 / 3.0)));

  // Empty hypothesis earns nothing.
  auto empty = make_hypothesis("", corpus.stopwords, 0);
  auto empty_outcome = compute_matches(corpus, {empty});
  CHECK(empty_outcome.partial.numerator == doctest::Approx(0.0));
  CHECK(empty_outcome.rp.numerator == doctest::Approx(0.0));
}

TEST_CASE("alignment-based match follows the links") {
  auto corpus = one_entry_corpus("the dry cough", "la tos seca",
                                 {{1, {1, 3}, {1, 3}}}, {{{"dry", "cough"}, {"tos", "seca"}, 1}});
  SUBCASE("perfect alignment with the terms in place") {
    auto hyp = make_hypothesis("la tos seca", corpus.stopwords, 0);
    auto a = parse_pharaoh("0-0 1-1 2-2");
    CHECK(*alignment_match(corpus, {hyp}, {a}).value() == doctest::Approx(1.0));
  }
  SUBCASE("empty alignment yields zero credit") {
    auto hyp = make_hypothesis("la tos seca", corpus.stopwords, 0);
    CHECK(*alignment_match(corpus, {hyp}, {WordAlignment{}}).value() == doctest::Approx(0.0));
  }
  SUBCASE("source term aligned to a single hypothesis token earns half") {
    auto hyp = make_hypothesis("la tos", corpus.stopwords, 0);
    // "dry cough" (source 1,2) is aligned only to hypothesis "tos" (1).
    auto a = parse_pharaoh("1-1 2-1");
    CHECK(*alignment_match(corpus, {hyp}, {a}).value() == doctest::Approx(0.5));
  }
  SUBCASE("out-of-bounds links are rejected") {
    auto hyp = make_hypothesis("la tos", corpus.stopwords, 0);
    auto a = parse_pharaoh("1-9");
    CHECK_THROWS_AS(alignment_match(corpus, {hyp}, {a}), Error);
  }
  SUBCASE("alignment count mismatch is rejected") {
    auto hyp = make_hypothesis("la tos", corpus.stopwords, 0);
    CHECK_THROWS_AS(alignment_match(corpus, {hyp}, {}), Error);
  }
}

TEST_CASE("accuracy is N/A on corpora without occurrences") {
  auto corpus = one_entry_corpus("no terms", "sin términos", {}, {{{"x"}, {"y"}, 1}});
  auto hyp = make_hypothesis("lo que sea", corpus.stopwords, 0);
  CHECK_FALSE(exact_match(corpus, {hyp}).value().has_value());
}

TEST_CASE("hypothesis/segment count mismatch is rejected") {
  auto corpus = mers_corpus();
  CHECK_THROWS_AS(exact_match(corpus, {}), Error);
}

TEST_CASE("metric order invariants on random fixtures") {
  for (std::uint32_t seed = 1; seed <= 100; ++seed) {
    auto fx = make_small_random_fixture(seed);
    auto outcome = compute_matches(fx.corpus, fx.honest);
    CHECK(outcome.exact.numerator <= outcome.partial.numerator + 1e-9);
    CHECK(outcome.rp.numerator <= outcome.partial.numerator + 1e-9);
    for (const auto& r : outcome.results) {
      CHECK(r.partial_credit >= 0.0);
      CHECK(r.partial_credit <= 1.0 + 1e-12);
      CHECK(r.rp_credit <= r.partial_credit + 1e-12);
      if (r.matched) CHECK(r.partial_credit == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("exact match is invariant to segment order and term-free padding") {
  auto fx = make_generated_fixture(5, {.segments = 20});
  auto base = compute_matches(fx.corpus, fx.honest);

  // Reversed segment order.
  EvalCorpus reversed;
  reversed.terminology = fx.corpus.terminology;
  reversed.stopwords = fx.corpus.stopwords;
  std::vector<Hypothesis> reversed_hyps;
  for (int s = static_cast<int>(fx.corpus.segments.size()) - 1; s >= 0; --s) {
    auto seg = fx.corpus.segments[s];
    seg.segment_id = static_cast<int>(reversed.segments.size());
    auto hyp = fx.honest[s];
    hyp.segment_id = seg.segment_id;
    reversed.segments.push_back(std::move(seg));
    reversed_hyps.push_back(std::move(hyp));
  }
  auto flipped = compute_matches(reversed, reversed_hyps);
  CHECK(flipped.exact.numerator == doctest::Approx(base.exact.numerator));
  CHECK(flipped.partial.numerator == doctest::Approx(base.partial.numerator));

  // Padding with a term-free segment changes nothing.
  EvalCorpus padded = fx.corpus;
  AnnotatedSegment blank;
  blank.segment_id = static_cast<int>(padded.segments.size());
  blank.reference = tokenize("vacío total", padded.stopwords);
  blank.source = tokenize("all empty", padded.stopwords);
  padded.segments.push_back(blank);
  auto padded_hyps = fx.honest;
  padded_hyps.push_back(make_hypothesis("irrelevante", padded.stopwords, blank.segment_id));
  auto with_pad = compute_matches(padded, padded_hyps);
  CHECK(with_pad.exact.numerator == doctest::Approx(base.exact.numerator));
  CHECK(with_pad.exact.denominator == base.exact.denominator);
}
