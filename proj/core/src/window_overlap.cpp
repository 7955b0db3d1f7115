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

#include "termeval/window_overlap.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include <json.hpp>

#include "termeval/parallel.hpp"

namespace termeval {

std::vector<std::string> extract_window(const std::vector<Token>& sentence, Span span, int n) {
  std::vector<std::string> window;
  auto content = [&](int i) { return !sentence[i].is_punct && !sentence[i].is_stopword; };
  int collected = 0;
  for (int i = span.begin - 1; i >= 0 && collected < n; --i) {
    if (!content(i)) continue;
    window.push_back(sentence[i].folded);
    ++collected;
  }
  collected = 0;
  for (int i = span.end; i < static_cast<int>(sentence.size()) && collected < n; ++i) {
    if (!content(i)) continue;
    window.push_back(sentence[i].folded);
    ++collected;
  }
  std::sort(window.begin(), window.end());
  return window;
}

double window_overlap_score(const std::vector<std::string>& hyp_window,
                            const std::vector<std::string>& ref_window) {
  if (hyp_window.empty() && ref_window.empty()) return 1.0;  // no context to get wrong
  std::vector<std::string> common;
  std::set_intersection(hyp_window.begin(), hyp_window.end(), ref_window.begin(),
                        ref_window.end(), std::back_inserter(common));
  return static_cast<double>(common.size()) /
         static_cast<double>(std::max(hyp_window.size(), ref_window.size()));
}

WindowOutcome window_overlap(const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps,
                             const std::vector<MatchResult>& matches, WindowConfig config,
                             unsigned jobs) {
  if (corpus.segments.size() != hyps.size()) {
    throw Error("hypothesis count does not match segment count");
  }
  // Matched occurrences grouped by segment, in their original order.
  std::vector<std::vector<const MatchResult*>> by_segment(corpus.segments.size());
  for (const auto& r : matches) {
    if (!r.matched) continue;
    if (!r.hyp_span) {
      throw Error("matched occurrence without a hypothesis span (segment " +
                  std::to_string(r.segment_id) + ")");
    }
    by_segment.at(r.segment_id).push_back(&r);
  }

  std::vector<std::vector<WindowScore>> details(corpus.segments.size());
  parallel_for(corpus.segments.size(), jobs, [&](std::size_t s) {
    const auto& seg = corpus.segments[s];
    for (const MatchResult* r : by_segment[s]) {
      const auto& occ = seg.occurrences.at(r->occurrence_index);
      WindowScore w;
      w.segment_id = r->segment_id;
      w.entry_id = r->entry_id;
      w.occurrence_index = r->occurrence_index;
      w.hyp_window = extract_window(hyps[s].tokens, *r->hyp_span, config.n);
      w.ref_window = extract_window(seg.reference, occ.ref_span, config.n);
      w.overlap = window_overlap_score(w.hyp_window, w.ref_window);
      details[s].push_back(std::move(w));
    }
  });

  WindowOutcome out;
  for (auto& seg_details : details) {
    for (auto& w : seg_details) {
      out.score.numerator += w.overlap;
      ++out.score.denominator;
      out.details.push_back(std::move(w));
    }
  }
  return out;
}

void write_window_scores(std::ostream& out, const std::vector<WindowScore>& scores) {
  for (const auto& w : scores) {
    nlohmann::json j;
    j["segment_id"] = w.segment_id;
    j["entry_id"] = w.entry_id;
    j["occurrence_index"] = w.occurrence_index;
    j["hyp_window"] = w.hyp_window;
    j["ref_window"] = w.ref_window;
    j["overlap"] = w.overlap;
    out << j.dump() << "\n";
  }
}

}  // namespace termeval
