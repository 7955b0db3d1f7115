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
#include <string_view>
#include <vector>

#include "termeval/common.hpp"
#include "termeval/text.hpp"

namespace termeval {

// One source->target translation mandated by the terminology. Terms may be
// multi-word on either side.
struct TermEntry {
  std::vector<std::string> source_tokens;
  std::vector<std::string> target_tokens;
  int id = 0;
};

struct Terminology {
  std::vector<TermEntry> entries;
  std::string source_lang;
  std::string target_lang;

  const TermEntry* find(int id) const;
};

// One appearance of a terminology entry in a test segment: paired token
// spans on the source and reference sides. Occurrences of the same entry
// never overlap; occurrences of different entries may nest.
struct TermOccurrence {
  int entry_id = 0;
  Span src_span;
  Span ref_span;

  friend bool operator==(const TermOccurrence&, const TermOccurrence&) = default;
};

struct AnnotatedSegment {
  std::vector<Token> source;
  std::vector<Token> reference;
  std::vector<TermOccurrence> occurrences;  // sorted by (ref_span, entry_id)
  int segment_id = 0;
};

struct Hypothesis {
  std::vector<Token> tokens;
  int segment_id = 0;
};

// The whole evaluation input: annotated segments are the comprehensive set
// of terms to score. Immutable after construction; safe to share across
// threads.
struct EvalCorpus {
  std::vector<AnnotatedSegment> segments;
  Terminology terminology;
  StopwordSet stopwords;

  std::size_t occurrence_count() const;
  void validate() const;  // contiguous ids, resolvable entries, in-bounds spans
};

enum class MatchMode { surface, lemma };

// --- terminology / hypothesis / lemma files -------------------------------

// Tab-separated source\ttarget, one entry per line. Duplicate pairs are
// collapsed with a warning on `warnings` (or stderr when null). Entry ids
// are 1-based positions in the deduplicated list.
Terminology load_terminology(std::istream& in, std::vector<std::string>* warnings = nullptr);
Terminology load_terminology_file(const std::string& path,
                                  std::vector<std::string>* warnings = nullptr);

std::vector<Hypothesis> load_hypotheses(std::istream& in, const StopwordSet& stopwords);
std::vector<Hypothesis> load_hypotheses_file(const std::string& path,
                                             const StopwordSet& stopwords);

// --- inline-tag test sets ---------------------------------------------------

// Pairs <term id="N">..</term> spans of equal id across the two sides.
// Tags may nest; each id appears at most once per side and must resolve in
// the terminology. Span/entry token mismatches are kept (annotations are
// gold) but reported on `warnings`.
AnnotatedSegment parse_inline_tags(std::string_view src_line, std::string_view ref_line,
                                   const Terminology& terminology,
                                   const StopwordSet& stopwords, int segment_id,
                                   std::vector<std::string>* warnings = nullptr);

// Re-emits a tagged line: opening tags directly before the first token of
// a span (wider spans first), closing tags directly after the last.
std::string serialize_inline_tags(const std::vector<Token>& tokens,
                                  const std::vector<std::pair<int, Span>>& spans);
std::pair<std::string, std::string> serialize_tagged_segment(const AnnotatedSegment& seg);

std::vector<AnnotatedSegment> load_tagged_corpus(std::istream& src, std::istream& ref,
                                                 const Terminology& terminology,
                                                 const StopwordSet& stopwords,
                                                 std::vector<std::string>* warnings = nullptr);

// --- automatic annotation over untagged parallel data -----------------------

struct AnnotateResult {
  std::vector<AnnotatedSegment> segments;
  int paired_occurrences = 0;
  int unpaired_source = 0;     // source-side matches with no reference partner
  int unpaired_reference = 0;  // and vice versa
};

// Finds every contiguous terminology match on both sides (longest entries
// first, nested shorter entries recorded independently), pairs the k-th
// source occurrence of an entry with the k-th reference occurrence, and
// drops unpaired matches. Lemma mode compares token lemmas against entry
// tokens and requires lemma lines.
AnnotateResult annotate_corpus(const std::vector<std::string>& source_lines,
                               const std::vector<std::string>& reference_lines,
                               const Terminology& terminology, MatchMode mode,
                               const StopwordSet& stopwords,
                               const std::vector<std::string>* source_lemma_lines = nullptr,
                               const std::vector<std::string>* reference_lemma_lines = nullptr);

// --- canonical segment records ----------------------------------------------

// One JSON object per line: {"src_tokens": [...], "ref_tokens": [...],
// "terms": [{"id": N, "src_span": [i, j], "ref_span": [i, j]}, ...]}.
void write_segments(std::ostream& out, const std::vector<AnnotatedSegment>& segments);
std::vector<AnnotatedSegment> read_segments(std::istream& in, const Terminology& terminology,
                                            const StopwordSet& stopwords);
std::vector<AnnotatedSegment> read_segments_file(const std::string& path,
                                                 const Terminology& terminology,
                                                 const StopwordSet& stopwords);

// Sort + validate helper shared by the ingestion paths.
void canonicalize_occurrences(std::vector<TermOccurrence>& occurrences);

}  // namespace termeval
