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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "termeval/common.hpp"
#include "termeval/text.hpp"

namespace termeval {

// Word-level links between a left and a right token sequence. Which
// sequences those are depends on provenance: bilingual alignment files
// pair source/hypothesis, the built-in monolingual aligner pairs
// hypothesis/reference. Many-to-many links are allowed.
struct WordAlignment {
  std::vector<std::pair<int, int>> links;  // sorted, unique

  void add(int left, int right) { links.emplace_back(left, right); }
  void normalize();
  bool empty() const { return links.empty(); }
  std::size_t size() const { return links.size(); }

  friend bool operator==(const WordAlignment&, const WordAlignment&) = default;
};

// Pharaoh interchange format: whitespace-separated 0-based "i-j" pairs.
WordAlignment parse_pharaoh(std::string_view line);
std::string serialize_pharaoh(const WordAlignment& a);
// One alignment line per segment; blank lines give empty alignments.
std::vector<WordAlignment> load_pharaoh(std::istream& in);
std::vector<WordAlignment> load_pharaoh_file(const std::string& path);

// Greedy one-to-one alignment of identical casefolded surfaces: repeatedly
// link the identical pair with the smallest relative-position distance
// |i/|h| - j/|r|| among still-unlinked tokens, breaking ties by smaller
// reference index, then smaller hypothesis index. Left side of the result
// is the hypothesis.
WordAlignment monolingual_align(const std::vector<Token>& hyp, const std::vector<Token>& ref);

struct ProjectedSpan {
  int lo = 0;  // inclusive
  int hi = 0;  // inclusive
  bool empty = true;

  Span as_range() const { return empty ? Span{0, 0} : Span{lo, hi + 1}; }
  friend bool operator==(const ProjectedSpan&, const ProjectedSpan&) = default;
};

enum class Side { left, right };

// All opposite-side indices linked to any index inside `span`, sorted.
std::vector<int> linked_indices(Span span, const WordAlignment& a, Side span_side);

// [min, max] of the linked indices; the projection need not be contiguous
// in the alignment for the span to collapse to a single range. Throws when
// a link lands outside [0, opposite_length).
ProjectedSpan project_span(Span span, const WordAlignment& a, Side span_side,
                           int opposite_length);

}  // namespace termeval
