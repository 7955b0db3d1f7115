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

#include "support/fixtures.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace termeval::testing {

StopwordSet spanish_stopwords() {
  return {"de", "la", "el", "los", "con", "y", "un", "como", "sus", "que"};
}

Terminology mers_terminology() {
  Terminology t;
  t.source_lang = "en";
  t.target_lang = "es";
  t.entries = {
      {{"fever"}, {"fiebre"}, 1},
      {{"cough"}, {"tos"}, 2},
      {{"dry", "cough"}, {"tos", "seca"}, 3},
      {{"symptoms"}, {"síntomas"}, 4},
  };
  return t;
}

namespace {

const char* kSource =
    "Comparably , a demographic study in 2012 showed that MERS-CoV patients also had fever "
    "(98%) , dry cough (47%) , and dyspnea (55%) as their main symptoms .";
const char* kReference =
    "De manera comparable , un estudio demográfico de 2012 demostró que los pacientes con "
    "MERS-CoV también tenían fiebre (98%) , tos seca (47%) y disnea (55%) como principales "
    "síntomas .";
const char* kOutput1 =
    "Comparablemente , un estudio demográfico realizado en 2012 mostró que los pacientes con "
    "MERS-CoV también tenían fiebre (98%) , tos seca (47%) y disnea (55%) como sus principales "
    "síntomas .";
const char* kOutput2 =
    "Comparablemente , un estudio demográfico realizado en 2012 mostró que los pacientes con "
    "MERS-CoV también tenían fiebre (98%) , tos (47%) y disnea (55%) como sus principales "
    "síntomas .";

}  // namespace

EvalCorpus mers_corpus() {
  EvalCorpus corpus;
  corpus.stopwords = spanish_stopwords();
  corpus.terminology = mers_terminology();
  AnnotatedSegment seg;
  seg.segment_id = 0;
  seg.source = tokenize(kSource, corpus.stopwords);
  seg.reference = tokenize(kReference, corpus.stopwords);
  seg.occurrences = {
      {1, {13, 14}, {17, 18}},  // fever / fiebre
      {2, {17, 18}, {20, 21}},  // cough / tos
      {3, {16, 18}, {20, 22}},  // dry cough / tos seca
      {4, {26, 27}, {28, 29}},  // symptoms / síntomas
  };
  canonicalize_occurrences(seg.occurrences);
  corpus.segments.push_back(std::move(seg));
  corpus.validate();
  return corpus;
}

Hypothesis make_hypothesis(const std::string& line, const StopwordSet& stopwords,
                           int segment_id) {
  Hypothesis h;
  h.segment_id = segment_id;
  h.tokens = tokenize(line, stopwords);
  return h;
}

std::vector<Hypothesis> mers_output1(const EvalCorpus& corpus) {
  return {make_hypothesis(kOutput1, corpus.stopwords, 0)};
}

std::vector<Hypothesis> mers_output2(const EvalCorpus& corpus) {
  return {make_hypothesis(kOutput2, corpus.stopwords, 0)};
}

std::string mers_tagged_source() {
  return "Comparably , a demographic study in 2012 showed that MERS-CoV patients also had "
         "<term id=\"1\">fever</term> (98%) , <term id=\"3\">dry <term id=\"2\">cough</term>"
         "</term> (47%) , and dyspnea (55%) as their main <term id=\"4\">symptoms</term> .";
}

std::string mers_tagged_reference() {
  return "De manera comparable , un estudio demográfico de 2012 demostró que los pacientes con "
         "MERS-CoV también tenían <term id=\"1\">fiebre</term> (98%) , <term id=\"3\">"
         "<term id=\"2\">tos</term> seca</term> (47%) y disnea (55%) como principales "
         "<term id=\"4\">síntomas</term> .";
}

std::vector<std::string> mers_source_tokens() { return split_ws(kSource); }
std::vector<std::string> mers_reference_tokens() { return split_ws(kReference); }

// --- generated corpora -------------------------------------------------------------

namespace {

struct TermPlacement {
  int entry_id;
  int ref_begin;  // token span in the reference
  int ref_end;
};

Terminology synthetic_terminology() {
  Terminology t;
  t.source_lang = "xx";
  t.target_lang = "yy";
  int id = 1;
  for (int i = 1; i <= 6; ++i, ++id) {
    t.entries.push_back({{"src" + std::to_string(i)}, {"trg" + std::to_string(i)}, id});
  }
  for (int i = 7; i <= 12; ++i, ++id) {
    t.entries.push_back({{"src" + std::to_string(i) + "a", "src" + std::to_string(i) + "b"},
                         {"trg" + std::to_string(i) + "a", "trg" + std::to_string(i) + "b"},
                         id});
  }
  return t;
}

const std::vector<std::string>& filler_vocab() {
  static const std::vector<std::string> vocab = [] {
    std::vector<std::string> v;
    for (int i = 0; i < 40; ++i) v.push_back("fill" + std::to_string(i));
    return v;
  }();
  return vocab;
}

const std::vector<std::string>& stop_vocab() {
  static const std::vector<std::string> v = {"da", "le", "po", "un", "se"};
  return v;
}

}  // namespace

GeneratedFixture make_generated_fixture(std::uint32_t seed, const FixtureOptions& options) {
  std::mt19937 rng(seed);
  auto rand_int = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint32_t>(hi - lo + 1));
  };
  auto rand_real = [&](void) { return (rng() % 10000) / 10000.0; };

  GeneratedFixture fx;
  fx.corpus.terminology = synthetic_terminology();
  fx.corpus.stopwords = {"da", "le", "po", "un", "se"};
  const auto& fillers = filler_vocab();
  const auto& stops = stop_vocab();

  for (int s = 0; s < options.segments; ++s) {
    AnnotatedSegment seg;
    seg.segment_id = s;

    const int n_fillers = rand_int(options.min_fillers, options.max_fillers);
    std::vector<std::string> ref_words;
    for (int i = 0; i < n_fillers; ++i) {
      if (rand_real() < 0.2) {
        ref_words.push_back(stops[rand_int(0, static_cast<int>(stops.size()) - 1)]);
      } else {
        ref_words.push_back(fillers[rand_int(0, static_cast<int>(fillers.size()) - 1)]);
      }
    }

    // Pick 1..max_terms distinct entries; segment 0 always carries a
    // multi-word term so the adversarial suites always see one.
    int n_terms = rand_int(1, options.max_terms_per_segment);
    std::vector<int> entry_ids;
    while (static_cast<int>(entry_ids.size()) < n_terms) {
      int id = rand_int(1, 12);
      if (std::find(entry_ids.begin(), entry_ids.end(), id) == entry_ids.end()) {
        entry_ids.push_back(id);
      }
    }
    if (s == 0 && std::find(entry_ids.begin(), entry_ids.end(), 7) == entry_ids.end()) {
      entry_ids[0] = 7;
    }

    // Insert each term at a distinct filler boundary, away from the tail so
    // appended-term windows cannot borrow genuine context.
    std::vector<TermPlacement> placements;
    std::vector<std::string> src_words;
    for (int e = 0; e < static_cast<int>(entry_ids.size()); ++e) {
      const TermEntry* entry = fx.corpus.terminology.find(entry_ids[e]);
      int max_pos = std::max(1, static_cast<int>(ref_words.size()) - 4);
      // Splice points inside an already-placed term would garble its span.
      std::vector<int> valid;
      for (int p = 1; p <= max_pos; ++p) {
        bool inside = false;
        for (const auto& q : placements) {
          if (p > q.ref_begin && p < q.ref_end) inside = true;
        }
        if (!inside) valid.push_back(p);
      }
      if (valid.empty()) {
        int after_all = 1;
        for (const auto& q : placements) after_all = std::max(after_all, q.ref_end);
        valid.push_back(after_all);
      }
      int pos = valid[rand_int(0, static_cast<int>(valid.size()) - 1)];
      // Build the reference with the term spliced in.
      std::vector<std::string> with_term;
      with_term.insert(with_term.end(), ref_words.begin(), ref_words.begin() + pos);
      int begin = static_cast<int>(with_term.size());
      with_term.insert(with_term.end(), entry->target_tokens.begin(),
                       entry->target_tokens.end());
      int end = static_cast<int>(with_term.size());
      with_term.insert(with_term.end(), ref_words.begin() + pos, ref_words.end());
      ref_words = std::move(with_term);
      // Earlier placements shift right when inserting before them.
      for (auto& p : placements) {
        if (p.ref_begin >= begin) {
          p.ref_begin += end - begin;
          p.ref_end += end - begin;
        }
      }
      placements.push_back({entry_ids[e], begin, end});
    }
    ref_words.push_back(".");

    // Source side mirrors the term order over its own filler vocabulary.
    std::sort(placements.begin(), placements.end(),
              [](const TermPlacement& a, const TermPlacement& b) {
                return a.ref_begin < b.ref_begin;
              });
    std::vector<TermOccurrence> occurrences;
    for (const auto& p : placements) {
      const TermEntry* entry = fx.corpus.terminology.find(p.entry_id);
      src_words.push_back("sfill" + std::to_string(rand_int(0, 19)));
      int begin = static_cast<int>(src_words.size());
      src_words.insert(src_words.end(), entry->source_tokens.begin(),
                       entry->source_tokens.end());
      int end = static_cast<int>(src_words.size());
      occurrences.push_back({p.entry_id, {begin, end}, {p.ref_begin, p.ref_end}});
    }
    src_words.push_back(".");

    seg.reference = tokenize(join_tokens(ref_words), fx.corpus.stopwords);
    seg.source = tokenize(join_tokens(src_words), fx.corpus.stopwords);
    seg.occurrences = std::move(occurrences);
    canonicalize_occurrences(seg.occurrences);

    // Honest hypothesis: the reference with bounded damage.
    std::vector<std::string> hyp_words = ref_words;
    if (rand_real() < options.perturb_rate) {
      // Swap one filler that sits at least 3 tokens from every term span.
      std::vector<int> safe;
      for (int i = 0; i < static_cast<int>(hyp_words.size()) - 1; ++i) {
        bool near_term = false;
        for (const auto& occ : seg.occurrences) {
          if (i >= occ.ref_span.begin - 3 && i < occ.ref_span.end + 3) near_term = true;
        }
        if (!near_term) safe.push_back(i);
      }
      if (!safe.empty()) {
        int i = safe[rand_int(0, static_cast<int>(safe.size()) - 1)];
        hyp_words[i] = "alt" + std::to_string(rand_int(0, 9));
      }
    }
    const bool damage = options.damage_rate > 0 &&
                        (s == 0 || rand_real() < options.damage_rate);
    if (damage && !seg.occurrences.empty()) {
      // Damage the first multi-word occurrence if any, else the first one.
      int victim = 0;
      for (std::size_t o = 0; o < seg.occurrences.size(); ++o) {
        const TermEntry* e = fx.corpus.terminology.find(seg.occurrences[o].entry_id);
        if (e->target_tokens.size() > 1) {
          victim = static_cast<int>(o);
          break;
        }
      }
      const auto& occ = seg.occurrences[victim];
      const TermEntry* e = fx.corpus.terminology.find(occ.entry_id);
      if (e->target_tokens.size() > 1) {
        hyp_words.erase(hyp_words.begin() + occ.ref_span.begin + 1);
      } else {
        hyp_words[occ.ref_span.begin] = "zz" + std::to_string(rand_int(0, 4));
      }
    }

    fx.honest.push_back(make_hypothesis(join_tokens(hyp_words), fx.corpus.stopwords, s));
    fx.corpus.segments.push_back(std::move(seg));
  }
  fx.corpus.validate();
  return fx;
}

GeneratedFixture make_small_random_fixture(std::uint32_t seed) {
  std::mt19937 rng(seed);
  FixtureOptions options;
  options.segments = 3 + static_cast<int>(rng() % 8);
  options.damage_rate = (rng() % 100) / 100.0;
  options.perturb_rate = (rng() % 100) / 100.0;
  options.min_fillers = 4;
  options.max_fillers = 10;
  GeneratedFixture fx = make_generated_fixture(rng(), options);
  // Sprinkle edge shapes: identity lines and empty lines.
  for (std::size_t s = 0; s < fx.honest.size(); ++s) {
    const auto roll = rng() % 10;
    if (roll == 0) {
      fx.honest[s].tokens = fx.corpus.segments[s].reference;
    } else if (roll == 1) {
      fx.honest[s].tokens.clear();
    }
  }
  return fx;
}

}  // namespace termeval::testing
