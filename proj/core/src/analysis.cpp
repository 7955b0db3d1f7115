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

#include "termeval/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

namespace termeval {

// --- cheating baselines --------------------------------------------------------

namespace {

std::vector<Hypothesis> cheat_impl(const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps,
                                   bool only_unmatched) {
  if (corpus.segments.size() != hyps.size()) {
    throw Error("hypothesis count does not match segment count");
  }
  std::vector<Hypothesis> out = hyps;
  for (std::size_t s = 0; s < corpus.segments.size(); ++s) {
    const auto& seg = corpus.segments[s];
    std::vector<MatchResult> matches;
    if (only_unmatched) matches = segment_matches(seg, hyps[s], corpus.terminology);
    for (std::size_t o = 0; o < seg.occurrences.size(); ++o) {
      if (only_unmatched && matches[o].matched) continue;
      const TermEntry* entry = corpus.terminology.find(seg.occurrences[o].entry_id);
      if (!entry) throw Error("unknown entry id " + std::to_string(seg.occurrences[o].entry_id));
      for (const auto& word : entry->target_tokens) {
        out[s].tokens.push_back(make_token(word, corpus.stopwords));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Hypothesis> smart_cheat(const EvalCorpus& corpus,
                                    const std::vector<Hypothesis>& hyps) {
  return cheat_impl(corpus, hyps, /*only_unmatched=*/true);
}

std::vector<Hypothesis> naive_cheat(const EvalCorpus& corpus,
                                    const std::vector<Hypothesis>& hyps) {
  return cheat_impl(corpus, hyps, /*only_unmatched=*/false);
}

// --- Spearman ------------------------------------------------------------------

std::vector<double> average_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

namespace {

std::optional<double> pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

double exact_permutation_p(const std::vector<double>& x_ranks, std::vector<double> y_ranks,
                           double observed) {
  std::sort(y_ranks.begin(), y_ranks.end());
  long long total = 0, at_least = 0;
  do {
    ++total;
    auto rho = pearson(x_ranks, y_ranks);
    if (rho && std::fabs(*rho) >= std::fabs(observed) - 1e-12) ++at_least;
  } while (std::next_permutation(y_ranks.begin(), y_ranks.end()));
  return static_cast<double>(at_least) / static_cast<double>(total);
}

double t_approximation_p(double rho, int n) {
  if (std::fabs(rho) >= 1.0 - 1e-15) return 0.0;
  const double dof = n - 2;
  const double t = rho * std::sqrt(dof / ((1.0 - rho) * (1.0 + rho)));
  boost::math::students_t_distribution<double> dist(dof);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
}

}  // namespace

CorrelationResult spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw Error("spearman: length mismatch");
  if (xs.size() < 3) throw Error("spearman: need at least 3 points");
  CorrelationResult result;
  result.n = static_cast<int>(xs.size());
  auto rx = average_ranks(xs);
  auto ry = average_ranks(ys);
  auto rho = pearson(rx, ry);
  if (!rho) return result;  // constant input: rho undefined
  result.rho = rho;
  if (xs.size() <= 8) {
    result.p_value = exact_permutation_p(rx, ry, *rho);
  } else {
    result.p_value = t_approximation_p(*rho, result.n);
  }
  return result;
}

// --- census ----------------------------------------------------------------------

MatchCensus match_census(const AnnotateResult& surface, const AnnotateResult* lemma) {
  MatchCensus census;
  std::set<std::tuple<int, int, Span, Span>> seen;
  for (const auto& seg : surface.segments) {
    for (const auto& occ : seg.occurrences) {
      seen.insert({seg.segment_id, occ.entry_id, occ.src_span, occ.ref_span});
      ++census.surface_matches;
    }
  }
  census.total = census.surface_matches;
  if (lemma) {
    int additional = 0;
    for (const auto& seg : lemma->segments) {
      for (const auto& occ : seg.occurrences) {
        if (!seen.count({seg.segment_id, occ.entry_id, occ.src_span, occ.ref_span})) {
          ++additional;
        }
      }
    }
    census.lemma_additional = additional;
    census.total += additional;
  }
  return census;
}

// --- report rendering ---------------------------------------------------------------

std::string format_percent(std::optional<double> fraction) {
  if (!fraction) return "N/A";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", *fraction * 100.0);
  return buf;
}

namespace {

const char* const kTsvHeader =
    "system\tbleu\texact_match\tpartial_match\trp_match\twindow_2\twindow_3"
    "\tone_minus_ter\tone_minus_term\talignment_match\tterm_bleu_2\tterm_bleu_3"
    "\texact_order_2\texact_order_3\tcheating";

std::vector<std::optional<double> SystemReport::*> report_fields() {
  return {&SystemReport::bleu,          &SystemReport::exact,
          &SystemReport::partial,       &SystemReport::rp,
          &SystemReport::window2,       &SystemReport::window3,
          &SystemReport::one_minus_ter, &SystemReport::one_minus_term,
          &SystemReport::alignment,     &SystemReport::term_bleu2,
          &SystemReport::term_bleu3,    &SystemReport::exact_order2,
          &SystemReport::exact_order3};
}

std::optional<double> parse_percent_cell(const std::string& cell, int line_no) {
  if (cell == "N/A") return std::nullopt;
  try {
    std::size_t used = 0;
    double value = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return value / 100.0;
  } catch (const std::exception&) {
    throw Error("report line " + std::to_string(line_no) + ": bad numeric cell '" + cell + "'");
  }
}

}  // namespace

std::string render_report_tsv(const std::vector<SystemReport>& reports) {
  std::string out = kTsvHeader;
  out.push_back('\n');
  for (const auto& r : reports) {
    out += r.name;
    for (auto field : report_fields()) {
      out.push_back('\t');
      out += format_percent(r.*field);
    }
    out.push_back('\t');
    out += r.is_cheating ? "yes" : "no";
    out.push_back('\n');
  }
  return out;
}

std::vector<SystemReport> parse_report_tsv(std::istream& in) {
  std::vector<SystemReport> reports;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != kTsvHeader) throw Error("unrecognized report header");
      continue;
    }
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == '\t') {
        cells.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    auto fields = report_fields();
    if (cells.size() != fields.size() + 2) {
      throw Error("report line " + std::to_string(line_no) + ": expected " +
                  std::to_string(fields.size() + 2) + " columns, got " +
                  std::to_string(cells.size()));
    }
    SystemReport r;
    r.name = cells[0];
    for (std::size_t f = 0; f < fields.size(); ++f) {
      r.*fields[f] = parse_percent_cell(cells[f + 1], line_no);
    }
    r.is_cheating = cells.back() == "yes";
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<SystemReport> parse_report_tsv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open report file: " + path);
  try {
    return parse_report_tsv(in);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

std::string render_report_markdown(const std::vector<SystemReport>& reports) {
  auto pair_cell = [](std::optional<double> a, std::optional<double> b) {
    return format_percent(a) + "/" + format_percent(b);
  };
  std::ostringstream out;
  out << "| System | BLEU | Exact Match | Window Overlap (2/3) | 1-TERm | 1-TER "
         "| Partial | RP Match | Align. Match | Term-BLEU (2/3) | Exact Order (2/3) |\n";
  out << "|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : reports) {
    const std::string name = r.is_cheating ? "*" + r.name + "*" : r.name;
    out << "| " << name << " | " << format_percent(r.bleu) << " | " << format_percent(r.exact)
        << " | " << pair_cell(r.window2, r.window3) << " | " << format_percent(r.one_minus_term)
        << " | " << format_percent(r.one_minus_ter) << " | " << format_percent(r.partial)
        << " | " << format_percent(r.rp) << " | " << format_percent(r.alignment) << " | "
        << pair_cell(r.term_bleu2, r.term_bleu3) << " | "
        << pair_cell(r.exact_order2, r.exact_order3) << " |\n";
  }
  return out.str();
}

// --- system correlations -----------------------------------------------------------

std::vector<CorrelationCell> metric_correlations(const std::vector<SystemReport>& reports) {
  struct Pair {
    const char* x;
    const char* y;
    std::optional<double> SystemReport::*fx;
    std::optional<double> SystemReport::*fy;
  };
  const Pair pairs[] = {
      {"bleu", "exact_match", &SystemReport::bleu, &SystemReport::exact},
      {"bleu", "window_3", &SystemReport::bleu, &SystemReport::window3},
      {"exact_match", "window_3", &SystemReport::exact, &SystemReport::window3},
  };
  std::vector<CorrelationCell> cells;
  for (const auto& p : pairs) {
    std::vector<double> xs, ys;
    for (const auto& r : reports) {
      if ((r.*p.fx) && (r.*p.fy)) {
        xs.push_back(*(r.*p.fx));
        ys.push_back(*(r.*p.fy));
      }
    }
    if (xs.size() < 3) {
      throw Error(std::string("correlate: need at least 3 systems with both '") + p.x +
                  "' and '" + p.y + "'");
    }
    cells.push_back({p.x, p.y, spearman(xs, ys)});
  }
  return cells;
}

std::string render_correlation_table(const std::vector<CorrelationCell>& cells, bool show_all) {
  std::ostringstream out;
  out << "metric_x\tmetric_y\trho\tp_value\tn\n";
  for (const auto& c : cells) {
    out << c.metric_x << '\t' << c.metric_y << '\t';
    const auto& r = c.result;
    if (!r.rho || (!show_all && r.p_value && *r.p_value > 0.2)) {
      out << "--";
    } else {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.4f", *r.rho);
      out << buf;
      if (r.p_value && *r.p_value < 0.1) out << '*';
    }
    out << '\t';
    if (r.p_value) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.4f", *r.p_value);
      out << buf;
    } else {
      out << "N/A";
    }
    out << '\t' << r.n << '\n';
  }
  return out.str();
}

// --- whole-system evaluation ----------------------------------------------------------

SystemEvaluation evaluate_system(const EvalCorpus& corpus, const std::vector<Hypothesis>& hyps,
                                 const std::string& name, const EvalOptions& options,
                                 const std::vector<WordAlignment>* bilingual_alignments,
                                 const std::vector<WordAlignment>* monolingual_alignments) {
  SystemEvaluation eval;
  eval.report.name = name;

  eval.report.bleu = corpus_bleu(corpus, hyps, BleuConfig::standard(), options.jobs) / 100.0;

  eval.matches = compute_matches(corpus, hyps, options.jobs);
  eval.report.exact = eval.matches.exact.value();
  eval.report.partial = eval.matches.partial.value();
  eval.report.rp = eval.matches.rp.value();

  for (int n : options.windows) {
    auto outcome = window_overlap(corpus, hyps, eval.matches.results, WindowConfig{n},
                                  options.jobs);
    if (n == 2) eval.report.window2 = outcome.score.value();
    if (n == 3) eval.report.window3 = outcome.score.value();
    eval.windows.emplace(n, std::move(outcome));
  }

  eval.term_ter = corpus_ter(corpus, hyps, options.c_term, options.ter_normalizer,
                             options.ter_average, options.jobs);
  eval.std_ter = corpus_ter(corpus, hyps, 1.0, options.ter_normalizer, options.ter_average,
                            options.jobs);
  eval.report.one_minus_term = eval.term_ter.one_minus_score();
  eval.report.one_minus_ter = eval.std_ter.one_minus_score();

  if (bilingual_alignments) {
    eval.report.alignment =
        alignment_match(corpus, hyps, *bilingual_alignments, options.jobs).value();
  }

  if (options.term_bleu_metrics) {
    for (int k : options.ks) {
      auto tb = term_bleu(corpus, hyps, k, BleuConfig::phrase_level(), monolingual_alignments,
                          options.jobs);
      auto eo = exact_order_match(corpus, hyps, k, monolingual_alignments, options.jobs);
      if (k == 2) {
        eval.report.term_bleu2 = tb ? std::optional<double>(*tb / 100.0) : std::nullopt;
        eval.report.exact_order2 = eo ? std::optional<double>(*eo / 100.0) : std::nullopt;
      }
      if (k == 3) {
        eval.report.term_bleu3 = tb ? std::optional<double>(*tb / 100.0) : std::nullopt;
        eval.report.exact_order3 = eo ? std::optional<double>(*eo / 100.0) : std::nullopt;
      }
      eval.phrases.emplace(k,
                           gather_term_phrases(corpus, hyps, k, monolingual_alignments,
                                               options.jobs));
    }
  }
  return eval;
}

}  // namespace termeval
