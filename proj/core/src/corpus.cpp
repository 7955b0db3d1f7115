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

#include "termeval/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace termeval {

namespace {

void emit_warning(std::vector<std::string>* warnings, std::string message) {
  if (warnings) {
    warnings->push_back(std::move(message));
  } else {
    std::cerr << "warning: " << message << "\n";
  }
}

}  // namespace

const TermEntry* Terminology::find(int id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

std::size_t EvalCorpus::occurrence_count() const {
  std::size_t n = 0;
  for (const auto& seg : segments) n += seg.occurrences.size();
  return n;
}

void EvalCorpus::validate() const {
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& seg = segments[i];
    if (seg.segment_id != static_cast<int>(i)) {
      throw Error("segment ids must be contiguous 0..N-1; got " +
                  std::to_string(seg.segment_id) + " at position " + std::to_string(i));
    }
    for (const auto& occ : seg.occurrences) {
      if (!terminology.find(occ.entry_id)) {
        throw Error("segment " + std::to_string(i) + ": unknown terminology entry id " +
                    std::to_string(occ.entry_id));
      }
      if (occ.src_span.empty() || occ.src_span.begin < 0 ||
          occ.src_span.end > static_cast<int>(seg.source.size())) {
        throw Error("segment " + std::to_string(i) + ": source span out of bounds");
      }
      if (occ.ref_span.empty() || occ.ref_span.begin < 0 ||
          occ.ref_span.end > static_cast<int>(seg.reference.size())) {
        throw Error("segment " + std::to_string(i) + ": reference span out of bounds");
      }
    }
    // Same-entry occurrences may not share tokens on either side.
    for (std::size_t a = 0; a < seg.occurrences.size(); ++a) {
      for (std::size_t b = a + 1; b < seg.occurrences.size(); ++b) {
        const auto& oa = seg.occurrences[a];
        const auto& ob = seg.occurrences[b];
        if (oa.entry_id != ob.entry_id) continue;
        if (oa.src_span.overlaps(ob.src_span) || oa.ref_span.overlaps(ob.ref_span)) {
          throw Error("segment " + std::to_string(i) + ": overlapping occurrences of entry " +
                      std::to_string(oa.entry_id));
        }
      }
    }
  }
}

void canonicalize_occurrences(std::vector<TermOccurrence>& occurrences) {
  std::sort(occurrences.begin(), occurrences.end(),
            [](const TermOccurrence& a, const TermOccurrence& b) {
              if (!(a.ref_span == b.ref_span)) return a.ref_span < b.ref_span;
              if (a.entry_id != b.entry_id) return a.entry_id < b.entry_id;
              return a.src_span < b.src_span;
            });
}

// --- terminology -------------------------------------------------------------

Terminology load_terminology(std::istream& in, std::vector<std::string>* warnings) {
  Terminology t;
  std::set<std::pair<std::vector<std::string>, std::vector<std::string>>> seen;
  int line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == '\t') {
        fields.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (fields.size() != 2) {
      throw Error("terminology line " + std::to_string(line_no) + ": expected 2 tab-separated fields, got " +
                  std::to_string(fields.size()));
    }
    TermEntry entry;
    entry.source_tokens = split_ws(fields[0]);
    entry.target_tokens = split_ws(fields[1]);
    if (entry.source_tokens.empty() || entry.target_tokens.empty()) {
      throw Error("terminology line " + std::to_string(line_no) + ": empty term");
    }
    if (!seen.insert({entry.source_tokens, entry.target_tokens}).second) {
      emit_warning(warnings, "terminology line " + std::to_string(line_no) +
                                 ": duplicate entry '" + fields[0] + "' -> '" + fields[1] +
                                 "' collapsed");
      continue;
    }
    entry.id = static_cast<int>(t.entries.size()) + 1;
    t.entries.push_back(std::move(entry));
  }
  return t;
}

Terminology load_terminology_file(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open terminology file: " + path);
  try {
    return load_terminology(in, warnings);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

std::vector<Hypothesis> load_hypotheses(std::istream& in, const StopwordSet& stopwords) {
  std::vector<Hypothesis> out;
  for (const auto& line : read_lines(in)) {
    Hypothesis h;
    h.segment_id = static_cast<int>(out.size());
    h.tokens = tokenize(line, stopwords);
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<Hypothesis> load_hypotheses_file(const std::string& path,
                                             const StopwordSet& stopwords) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open hypothesis file: " + path);
  return load_hypotheses(in, stopwords);
}

// --- inline tags -------------------------------------------------------------

namespace {

struct TaggedLine {
  std::vector<std::string> tokens;
  std::map<int, Span> spans;  // id -> token span
};

constexpr std::string_view kOpenPrefix = "<term id=\"";
constexpr std::string_view kClose = "</term>";

TaggedLine parse_tagged_line(std::string_view line, const std::string& where) {
  TaggedLine out;
  std::vector<std::pair<int, int>> open;  // (id, start token index)
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      out.tokens.push_back(current);
      current.clear();
    }
  };
  std::size_t i = 0;
  while (i < line.size()) {
    if (line.compare(i, kOpenPrefix.size(), kOpenPrefix) == 0) {
      flush();
      i += kOpenPrefix.size();
      std::size_t j = i;
      while (j < line.size() && line[j] >= '0' && line[j] <= '9') ++j;
      if (j == i || j + 1 >= line.size() || line[j] != '"' || line[j + 1] != '>') {
        throw Error(where + ": malformed <term> tag");
      }
      int id = 0;
      for (std::size_t k = i; k < j; ++k) id = id * 10 + (line[k] - '0');
      if (id <= 0) throw Error(where + ": term id must be positive");
      open.emplace_back(id, static_cast<int>(out.tokens.size()));
      i = j + 2;
    } else if (line.compare(i, kClose.size(), kClose) == 0) {
      flush();
      if (open.empty()) throw Error(where + ": unbalanced </term>");
      auto [id, start] = open.back();
      open.pop_back();
      int end = static_cast<int>(out.tokens.size());
      if (end <= start) throw Error(where + ": empty term span for id " + std::to_string(id));
      if (!out.spans.emplace(id, Span{start, end}).second) {
        throw Error(where + ": duplicate term id " + std::to_string(id));
      }
      i += kClose.size();
    } else if (std::isspace(static_cast<unsigned char>(line[i]))) {
      flush();
      ++i;
    } else {
      current.push_back(line[i]);
      ++i;
    }
  }
  flush();
  if (!open.empty()) {
    throw Error(where + ": unclosed <term id=\"" + std::to_string(open.back().first) + "\">");
  }
  return out;
}

std::vector<Token> to_tokens(const std::vector<std::string>& pieces, const StopwordSet& stop) {
  std::vector<Token> out;
  out.reserve(pieces.size());
  for (const auto& p : pieces) out.push_back(make_token(p, stop));
  return out;
}

bool span_matches_entry(const std::vector<Token>& tokens, Span span,
                        const std::vector<std::string>& entry_tokens) {
  if (span.size() != static_cast<int>(entry_tokens.size())) return false;
  for (int k = 0; k < span.size(); ++k) {
    if (tokens[span.begin + k].folded != casefold(entry_tokens[k])) return false;
  }
  return true;
}

}  // namespace

AnnotatedSegment parse_inline_tags(std::string_view src_line, std::string_view ref_line,
                                   const Terminology& terminology,
                                   const StopwordSet& stopwords, int segment_id,
                                   std::vector<std::string>* warnings) {
  const std::string where = "line " + std::to_string(segment_id + 1);
  TaggedLine src = parse_tagged_line(src_line, where + " (source)");
  TaggedLine ref = parse_tagged_line(ref_line, where + " (reference)");

  AnnotatedSegment seg;
  seg.segment_id = segment_id;
  seg.source = to_tokens(src.tokens, stopwords);
  seg.reference = to_tokens(ref.tokens, stopwords);

  for (const auto& [id, src_span] : src.spans) {
    auto it = ref.spans.find(id);
    if (it == ref.spans.end()) {
      throw Error(where + ": term id " + std::to_string(id) + " tagged on the source side only");
    }
    const TermEntry* entry = terminology.find(id);
    if (!entry) {
      throw Error(where + ": term id " + std::to_string(id) + " not in the terminology");
    }
    if (!span_matches_entry(seg.source, src_span, entry->source_tokens)) {
      emit_warning(warnings, where + ": source span of id " + std::to_string(id) +
                                 " differs from terminology entry; keeping the annotation");
    }
    if (!span_matches_entry(seg.reference, it->second, entry->target_tokens)) {
      emit_warning(warnings, where + ": reference span of id " + std::to_string(id) +
                                 " differs from terminology entry; keeping the annotation");
    }
    seg.occurrences.push_back({id, src_span, it->second});
  }
  for (const auto& [id, span] : ref.spans) {
    (void)span;
    if (!src.spans.count(id)) {
      throw Error(where + ": term id " + std::to_string(id) + " tagged on the reference side only");
    }
  }
  canonicalize_occurrences(seg.occurrences);
  return seg;
}

std::string serialize_inline_tags(const std::vector<Token>& tokens,
                                  const std::vector<std::pair<int, Span>>& spans) {
  const int n = static_cast<int>(tokens.size());
  // opens[i]: span ids opening before token i, widest (then smallest id) first.
  std::vector<std::vector<std::pair<int, Span>>> opens(n + 1), closes(n + 1);
  for (const auto& [id, span] : spans) {
    opens[span.begin].push_back({id, span});
    closes[span.end].push_back({id, span});
  }
  for (auto& v : opens) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
      if (a.second.end != b.second.end) return a.second.end > b.second.end;
      return a.first < b.first;
    });
  }
  for (auto& v : closes) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
      if (a.second.begin != b.second.begin) return a.second.begin > b.second.begin;
      return a.first > b.first;
    });
  }
  std::string out;
  bool first = true;
  for (int i = 0; i <= n; ++i) {
    // Closing tags attach directly to the preceding token.
    for (const auto& [id, span] : closes[i]) {
      (void)id;
      (void)span;
      out += kClose;
    }
    if (i == n) break;
    if (!first) out.push_back(' ');
    for (const auto& [id, span] : opens[i]) {
      (void)span;
      out += std::string(kOpenPrefix) + std::to_string(id) + "\">";
    }
    out += tokens[i].surface;
    first = false;
  }
  return out;
}

std::pair<std::string, std::string> serialize_tagged_segment(const AnnotatedSegment& seg) {
  std::vector<std::pair<int, Span>> src_spans, ref_spans;
  for (const auto& occ : seg.occurrences) {
    src_spans.push_back({occ.entry_id, occ.src_span});
    ref_spans.push_back({occ.entry_id, occ.ref_span});
  }
  return {serialize_inline_tags(seg.source, src_spans),
          serialize_inline_tags(seg.reference, ref_spans)};
}

std::vector<AnnotatedSegment> load_tagged_corpus(std::istream& src, std::istream& ref,
                                                 const Terminology& terminology,
                                                 const StopwordSet& stopwords,
                                                 std::vector<std::string>* warnings) {
  auto src_lines = read_lines(src);
  auto ref_lines = read_lines(ref);
  if (src_lines.size() != ref_lines.size()) {
    throw Error("tagged corpus: " + std::to_string(src_lines.size()) + " source lines vs " +
                std::to_string(ref_lines.size()) + " reference lines");
  }
  std::vector<AnnotatedSegment> out;
  out.reserve(src_lines.size());
  for (std::size_t i = 0; i < src_lines.size(); ++i) {
    out.push_back(parse_inline_tags(src_lines[i], ref_lines[i], terminology, stopwords,
                                    static_cast<int>(i), warnings));
  }
  return out;
}

// --- automatic annotation ----------------------------------------------------

namespace {

// Greedy leftmost disjoint matches of `needle` over the token keys.
std::vector<Span> find_matches(const std::vector<Token>& tokens,
                               const std::vector<std::string>& needle_folded, bool lemma_mode) {
  std::vector<Span> out;
  const int n = static_cast<int>(tokens.size());
  const int m = static_cast<int>(needle_folded.size());
  int i = 0;
  while (i + m <= n) {
    bool hit = true;
    for (int k = 0; k < m; ++k) {
      if (tokens[i + k].key(lemma_mode) != needle_folded[k]) {
        hit = false;
        break;
      }
    }
    if (hit) {
      out.push_back({i, i + m});
      i += m;  // same-entry occurrences stay disjoint
    } else {
      ++i;
    }
  }
  return out;
}

std::vector<std::string> fold_all(const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(casefold(t));
  return out;
}

}  // namespace

AnnotateResult annotate_corpus(const std::vector<std::string>& source_lines,
                               const std::vector<std::string>& reference_lines,
                               const Terminology& terminology, MatchMode mode,
                               const StopwordSet& stopwords,
                               const std::vector<std::string>* source_lemma_lines,
                               const std::vector<std::string>* reference_lemma_lines) {
  if (source_lines.size() != reference_lines.size()) {
    throw Error("annotate: " + std::to_string(source_lines.size()) + " source lines vs " +
                std::to_string(reference_lines.size()) + " reference lines");
  }
  const bool lemma_mode = mode == MatchMode::lemma;
  if (lemma_mode && (!source_lemma_lines || !reference_lemma_lines)) {
    throw Error("annotate: lemma mode requires lemma files for both sides");
  }
  if (source_lemma_lines && source_lemma_lines->size() != source_lines.size()) {
    throw Error("annotate: source lemma line count mismatch");
  }
  if (reference_lemma_lines && reference_lemma_lines->size() != reference_lines.size()) {
    throw Error("annotate: reference lemma line count mismatch");
  }

  // Longest entries first so multi-word terms claim their spans; shorter
  // nested entries are still matched independently afterwards.
  std::vector<const TermEntry*> ordered;
  for (const auto& e : terminology.entries) ordered.push_back(&e);
  std::sort(ordered.begin(), ordered.end(), [](const TermEntry* a, const TermEntry* b) {
    if (a->source_tokens.size() != b->source_tokens.size()) {
      return a->source_tokens.size() > b->source_tokens.size();
    }
    return a->id < b->id;
  });

  AnnotateResult result;
  result.segments.reserve(source_lines.size());
  for (std::size_t s = 0; s < source_lines.size(); ++s) {
    AnnotatedSegment seg;
    seg.segment_id = static_cast<int>(s);
    try {
      seg.source = source_lemma_lines
                       ? tokenize(source_lines[s], (*source_lemma_lines)[s], stopwords)
                       : tokenize(source_lines[s], stopwords);
      seg.reference = reference_lemma_lines
                          ? tokenize(reference_lines[s], (*reference_lemma_lines)[s], stopwords)
                          : tokenize(reference_lines[s], stopwords);
    } catch (const Error& e) {
      throw Error("segment " + std::to_string(s) + ": " + e.what());
    }
    for (const TermEntry* entry : ordered) {
      auto src_hits = find_matches(seg.source, fold_all(entry->source_tokens), lemma_mode);
      auto ref_hits = find_matches(seg.reference, fold_all(entry->target_tokens), lemma_mode);
      std::size_t paired = std::min(src_hits.size(), ref_hits.size());
      for (std::size_t k = 0; k < paired; ++k) {
        seg.occurrences.push_back({entry->id, src_hits[k], ref_hits[k]});
      }
      result.paired_occurrences += static_cast<int>(paired);
      result.unpaired_source += static_cast<int>(src_hits.size() - paired);
      result.unpaired_reference += static_cast<int>(ref_hits.size() - paired);
    }
    canonicalize_occurrences(seg.occurrences);
    result.segments.push_back(std::move(seg));
  }
  return result;
}

// --- canonical records -------------------------------------------------------

void write_segments(std::ostream& out, const std::vector<AnnotatedSegment>& segments) {
  for (const auto& seg : segments) {
    nlohmann::json j;
    j["src_tokens"] = surfaces(seg.source);
    j["ref_tokens"] = surfaces(seg.reference);
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& occ : seg.occurrences) {
      terms.push_back({{"id", occ.entry_id},
                       {"src_span", {occ.src_span.begin, occ.src_span.end}},
                       {"ref_span", {occ.ref_span.begin, occ.ref_span.end}}});
    }
    j["terms"] = std::move(terms);
    out << j.dump() << "\n";
  }
}

std::vector<AnnotatedSegment> read_segments(std::istream& in, const Terminology& terminology,
                                            const StopwordSet& stopwords) {
  std::vector<AnnotatedSegment> segments;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error("segment record line " + std::to_string(line_no) + ": " + e.what());
    }
    AnnotatedSegment seg;
    seg.segment_id = static_cast<int>(segments.size());
    for (const auto& t : j.at("src_tokens")) {
      seg.source.push_back(make_token(t.get<std::string>(), stopwords));
    }
    for (const auto& t : j.at("ref_tokens")) {
      seg.reference.push_back(make_token(t.get<std::string>(), stopwords));
    }
    for (const auto& term : j.at("terms")) {
      TermOccurrence occ;
      occ.entry_id = term.at("id").get<int>();
      occ.src_span = {term.at("src_span").at(0).get<int>(), term.at("src_span").at(1).get<int>()};
      occ.ref_span = {term.at("ref_span").at(0).get<int>(), term.at("ref_span").at(1).get<int>()};
      if (!terminology.find(occ.entry_id)) {
        throw Error("segment record line " + std::to_string(line_no) + ": unknown entry id " +
                    std::to_string(occ.entry_id));
      }
      seg.occurrences.push_back(occ);
    }
    canonicalize_occurrences(seg.occurrences);
    segments.push_back(std::move(seg));
  }
  return segments;
}

std::vector<AnnotatedSegment> read_segments_file(const std::string& path,
                                                 const Terminology& terminology,
                                                 const StopwordSet& stopwords) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open segment file: " + path);
  try {
    return read_segments(in, terminology, stopwords);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

}  // namespace termeval
