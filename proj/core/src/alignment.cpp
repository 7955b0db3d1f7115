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

#include "termeval/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>

namespace termeval {

void WordAlignment::normalize() {
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());
}

WordAlignment parse_pharaoh(std::string_view line) {
  WordAlignment a;
  for (const auto& piece : split_ws(line)) {
    auto dash = piece.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == piece.size()) {
      throw Error("malformed alignment pair: '" + piece + "'");
    }
    auto parse_index = [&](std::string_view s) {
      int value = 0;
      for (char ch : s) {
        if (ch < '0' || ch > '9') throw Error("malformed alignment pair: '" + piece + "'");
        value = value * 10 + (ch - '0');
      }
      return value;
    };
    a.add(parse_index(std::string_view(piece).substr(0, dash)),
          parse_index(std::string_view(piece).substr(dash + 1)));
  }
  a.normalize();
  return a;
}

std::string serialize_pharaoh(const WordAlignment& a) {
  std::string out;
  for (std::size_t i = 0; i < a.links.size(); ++i) {
    if (i) out.push_back(' ');
    out += std::to_string(a.links[i].first);
    out.push_back('-');
    out += std::to_string(a.links[i].second);
  }
  return out;
}

std::vector<WordAlignment> load_pharaoh(std::istream& in) {
  std::vector<WordAlignment> out;
  for (const auto& line : read_lines(in)) out.push_back(parse_pharaoh(line));
  return out;
}

std::vector<WordAlignment> load_pharaoh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open alignment file: " + path);
  try {
    return load_pharaoh(in);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

WordAlignment monolingual_align(const std::vector<Token>& hyp, const std::vector<Token>& ref) {
  struct Candidate {
    double dist;
    int j;  // reference index
    int i;  // hypothesis index
  };
  std::vector<Candidate> candidates;
  const double hlen = hyp.empty() ? 1.0 : static_cast<double>(hyp.size());
  const double rlen = ref.empty() ? 1.0 : static_cast<double>(ref.size());
  for (std::size_t i = 0; i < hyp.size(); ++i) {
    for (std::size_t j = 0; j < ref.size(); ++j) {
      if (hyp[i].folded != ref[j].folded) continue;
      // 1-based relative positions, as elsewhere in the toolkit.
      double dist = std::fabs((i + 1) / hlen - (j + 1) / rlen);
      candidates.push_back({dist, static_cast<int>(j), static_cast<int>(i)});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  });
  std::vector<bool> hyp_used(hyp.size(), false), ref_used(ref.size(), false);
  WordAlignment a;
  for (const auto& c : candidates) {
    if (hyp_used[c.i] || ref_used[c.j]) continue;
    hyp_used[c.i] = ref_used[c.j] = true;
    a.add(c.i, c.j);
  }
  a.normalize();
  return a;
}

std::vector<int> linked_indices(Span span, const WordAlignment& a, Side span_side) {
  std::vector<int> out;
  for (const auto& [left, right] : a.links) {
    int on_span_side = span_side == Side::left ? left : right;
    int opposite = span_side == Side::left ? right : left;
    if (span.contains(on_span_side)) out.push_back(opposite);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ProjectedSpan project_span(Span span, const WordAlignment& a, Side span_side,
                           int opposite_length) {
  auto indices = linked_indices(span, a, span_side);
  ProjectedSpan p;
  if (indices.empty()) return p;
  if (indices.front() < 0 || indices.back() >= opposite_length) {
    throw Error("alignment link outside sentence of length " +
                std::to_string(opposite_length));
  }
  p.lo = indices.front();
  p.hi = indices.back();
  p.empty = false;
  return p;
}

}  // namespace termeval
