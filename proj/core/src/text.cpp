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

#include "termeval/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

namespace termeval {

std::vector<char32_t> decode_utf8(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char b = static_cast<unsigned char>(s[i]);
    char32_t cp = 0xFFFD;
    std::size_t len = 1;
    if (b < 0x80) {
      cp = b;
    } else if ((b & 0xE0) == 0xC0) {
      len = 2;
      cp = b & 0x1F;
    } else if ((b & 0xF0) == 0xE0) {
      len = 3;
      cp = b & 0x0F;
    } else if ((b & 0xF8) == 0xF0) {
      len = 4;
      cp = b & 0x07;
    } else {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    if (len > 1) {
      if (i + len > s.size()) {
        out.push_back(0xFFFD);
        ++i;
        continue;
      }
      bool ok = true;
      for (std::size_t k = 1; k < len; ++k) {
        unsigned char c = static_cast<unsigned char>(s[i + k]);
        if ((c & 0xC0) != 0x80) {
          ok = false;
          break;
        }
        cp = (cp << 6) | (c & 0x3F);
      }
      if (!ok) {
        out.push_back(0xFFFD);
        ++i;
        continue;
      }
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(const std::vector<char32_t>& cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

namespace {

char32_t lower_cp(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 32;
  // Latin-1: C0..DE -> E0..FE, skipping the multiplication sign.
  if (c >= 0x00C0 && c <= 0x00DE && c != 0x00D7) return c + 32;
  // Latin Extended-A: alternating upper/lower pairs.
  if (c >= 0x0100 && c <= 0x0177) {
    if (c == 0x0130) return U'i';              // dotted capital I
    if (c == 0x0138 || c == 0x0149) return c;  // lowercase-only oddballs
    if (c >= 0x0139 && c <= 0x0148) return (c % 2 == 1) ? c + 1 : c;
    return (c % 2 == 0) ? c + 1 : c;
  }
  if (c == 0x0178) return 0x00FF;  // Y with diaeresis
  if (c >= 0x0179 && c <= 0x017E) return (c % 2 == 1) ? c + 1 : c;
  // Greek.
  if (c >= 0x0391 && c <= 0x03A9 && c != 0x03A2) return c + 32;
  if (c == 0x03AA) return 0x03CA;
  if (c == 0x03AB) return 0x03CB;
  if (c == 0x0386) return 0x03AC;
  if (c >= 0x0388 && c <= 0x038A) return c + 37;
  if (c == 0x038C) return 0x03CC;
  if (c == 0x038E) return 0x03CD;
  if (c == 0x038F) return 0x03CE;
  // Cyrillic.
  if (c >= 0x0410 && c <= 0x042F) return c + 32;
  if (c >= 0x0400 && c <= 0x040F) return c + 80;
  // Fullwidth Latin capitals.
  if (c >= 0xFF21 && c <= 0xFF3A) return c + 32;
  return c;
}

struct CpRange {
  char32_t lo;
  char32_t hi;
};

// Non-letter codepoint ranges outside ASCII: punctuation, symbols and
// digits of the scripts this toolkit is exercised on. Anything not listed
// here (and not ASCII) is assumed to be part of a word.
constexpr CpRange kNonLetterRanges[] = {
    {0x00A0, 0x00A9}, {0x00AB, 0x00B4}, {0x00B6, 0x00B9},
    {0x00BB, 0x00BF}, {0x00D7, 0x00D7}, {0x00F7, 0x00F7},
    {0x02B9, 0x02DD},                    // modifier primes and accents
    {0x055A, 0x055F}, {0x0589, 0x058A},  // Armenian punctuation
    {0x060C, 0x060D}, {0x061B, 0x061B}, {0x061E, 0x061F},
    {0x0660, 0x0669}, {0x066A, 0x066D}, {0x06D4, 0x06D4},
    {0x06F0, 0x06F9},                    // Arabic punctuation and digits
    {0x0964, 0x0965}, {0x0966, 0x096F},  // danda, Devanagari digits
    {0x0BE6, 0x0BEF}, {0x0BF0, 0x0BFA},  // Tamil digits and symbols
    {0x0E4F, 0x0E5B},                    // Thai punctuation
    {0x17D4, 0x17DB}, {0x17E0, 0x17E9},  // Khmer punctuation and digits
    {0x2000, 0x206F},                    // general punctuation
    {0x2070, 0x209F}, {0x20A0, 0x20CF},  // super/subscripts, currency
    {0x2100, 0x214F}, {0x2150, 0x218F},  // letterlike symbols, number forms
    {0x2190, 0x2BFF},                    // arrows .. misc symbols
    {0x2E00, 0x2E7F},                    // supplemental punctuation
    {0x3000, 0x303F},                    // CJK symbols and punctuation
    {0x30FB, 0x30FB},                    // katakana middle dot
    {0xFE10, 0xFE6F},                    // vertical/small/compat forms
    {0xFF01, 0xFF20}, {0xFF3B, 0xFF40},  // fullwidth punctuation + digits
    {0xFF5B, 0xFF65}, {0xFFE0, 0xFFEE},
    {0x1D400, 0x1D7FF},                  // math alphanumerics
    {0x1F000, 0x1FAFF},                  // emoji and friends
};

bool letter_cp(char32_t c) {
  if (c < 0x80) {
    return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z');
  }
  // A handful of Latin-1 letters live between the punctuation blocks.
  if (c == 0x00AA || c == 0x00B5 || c == 0x00BA) return true;
  for (const auto& r : kNonLetterRanges) {
    if (c >= r.lo && c <= r.hi) return false;
  }
  return true;
}

}  // namespace

std::string casefold(std::string_view s) {
  // Fast path: pure ASCII.
  bool ascii = true;
  for (char ch : s) {
    if (static_cast<unsigned char>(ch) >= 0x80) {
      ascii = false;
      break;
    }
  }
  if (ascii) {
    std::string out(s);
    for (char& ch : out) {
      if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch + 32);
    }
    return out;
  }
  auto cps = decode_utf8(s);
  for (char32_t& c : cps) c = lower_cp(c);
  return encode_utf8(cps);
}

bool is_punct_token(std::string_view surface) {
  if (surface.empty()) return false;
  for (char32_t c : decode_utf8(surface)) {
    if (letter_cp(c)) return false;
  }
  return true;
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

Token make_token(std::string surface, const StopwordSet& stopwords) {
  Token t;
  t.folded = casefold(surface);
  t.is_punct = is_punct_token(surface);
  t.is_stopword = stopwords.count(t.folded) > 0;
  t.surface = std::move(surface);
  return t;
}

std::vector<Token> tokenize(std::string_view line, const StopwordSet& stopwords) {
  std::vector<Token> out;
  for (auto& piece : split_ws(line)) out.push_back(make_token(std::move(piece), stopwords));
  return out;
}

std::vector<Token> tokenize(std::string_view line, std::string_view lemma_line,
                            const StopwordSet& stopwords) {
  auto tokens = tokenize(line, stopwords);
  auto lemmas = split_ws(lemma_line);
  if (lemmas.size() != tokens.size()) {
    throw Error("lemma/surface token count mismatch: " + std::to_string(lemmas.size()) +
                " lemmas vs " + std::to_string(tokens.size()) + " tokens");
  }
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    tokens[i].folded_lemma = casefold(lemmas[i]);
    tokens[i].lemma = std::move(lemmas[i]);
  }
  return tokens;
}

std::vector<std::string> folded_surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.folded);
  return out;
}

std::vector<std::string> surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

StopwordSet load_stopwords(std::istream& in) {
  StopwordSet set;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto pieces = split_ws(line);
    if (pieces.empty() || pieces.front()[0] == '#') continue;
    set.insert(casefold(pieces.front()));
  }
  return set;
}

StopwordSet load_stopwords_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open stopword file: " + path);
  return load_stopwords(in);
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> read_lines_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  return read_lines(in);
}

}  // namespace termeval
