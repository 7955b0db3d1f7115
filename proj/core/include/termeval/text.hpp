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
#include <unordered_set>
#include <vector>

#include "termeval/common.hpp"

namespace termeval {

using StopwordSet = std::unordered_set<std::string>;

// One whitespace-delimited token of a pre-tokenized sentence.
struct Token {
  std::string surface;
  std::string folded;        // casefolded surface, cached for comparisons
  std::string lemma;         // empty when no lemma file was supplied
  std::string folded_lemma;  // casefolded lemma, empty when absent
  bool is_punct = false;
  bool is_stopword = false;

  // Comparison key for terminology matching: folded lemma in lemma mode
  // (falling back to the surface for tokens without one), folded surface
  // otherwise.
  const std::string& key(bool lemma_mode) const {
    return lemma_mode && !folded_lemma.empty() ? folded_lemma : folded;
  }
};

// Decodes UTF-8; malformed bytes come back as U+FFFD.
std::vector<char32_t> decode_utf8(std::string_view s);
std::string encode_utf8(const std::vector<char32_t>& cps);

// Codepoint-wise lowercasing over the common bicameral ranges (ASCII,
// Latin-1/Extended-A, Greek, Cyrillic, fullwidth Latin).
std::string casefold(std::string_view s);

// A token counts as punctuation when it contains no letter; detached
// number tokens like "(98%)" are non-content alongside plain punctuation
// and symbols.
bool is_punct_token(std::string_view surface);

std::vector<std::string> split_ws(std::string_view line);

std::vector<Token> tokenize(std::string_view line, const StopwordSet& stopwords);
// Attaches lemmas positionally; throws Error on token-count mismatch.
std::vector<Token> tokenize(std::string_view line, std::string_view lemma_line,
                            const StopwordSet& stopwords);
Token make_token(std::string surface, const StopwordSet& stopwords);

std::vector<std::string> folded_surfaces(const std::vector<Token>& tokens);
std::vector<std::string> surfaces(const std::vector<Token>& tokens);
std::string join_tokens(const std::vector<std::string>& tokens);

// One casefolded token per line; '#'-prefixed lines and blanks ignored.
StopwordSet load_stopwords(std::istream& in);
StopwordSet load_stopwords_file(const std::string& path);

std::vector<std::string> read_lines(std::istream& in);
std::vector<std::string> read_lines_file(const std::string& path);

}  // namespace termeval
