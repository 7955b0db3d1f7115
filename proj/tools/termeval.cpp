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
//
// termeval: batch evaluation of terminology consistency for MT output.
// Subcommands: annotate, evaluate, cheat, correlate.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "termeval/analysis.hpp"

namespace fs = std::filesystem;
using namespace termeval;

namespace {

struct StopwordArgs {
  std::string file;
  std::string lang;
};

void add_stopword_flags(CLI::App* cmd, StopwordArgs& args) {
  cmd->add_option("--stopwords", args.file, "Stopword file, one token per line");
  cmd->add_option("--stopwords-lang", args.lang,
                  "Language code resolved against $TERMEVAL_STOPWORDS_DIR "
                  "(default data/stopwords)");
}

StopwordSet resolve_stopwords(const StopwordArgs& args) {
  if (!args.file.empty()) return load_stopwords_file(args.file);
  if (!args.lang.empty()) {
    const char* env = std::getenv("TERMEVAL_STOPWORDS_DIR");
    fs::path dir = env ? fs::path(env) : fs::path("data/stopwords");
    return load_stopwords_file((dir / (args.lang + ".txt")).string());
  }
  return {};
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("write failed: " + path.string());
}

// "name=path" or bare path (name = stem).
std::pair<std::string, std::string> split_named_path(const std::string& arg) {
  auto eq = arg.find('=');
  if (eq == std::string::npos) return {fs::path(arg).stem().string(), arg};
  return {arg.substr(0, eq), arg.substr(eq + 1)};
}

std::string format_count(std::optional<int> v) {
  return v ? std::to_string(*v) : std::string("N/A");
}

// --- annotate ---------------------------------------------------------------

struct AnnotateArgs {
  std::string source, reference, terminology;
  std::string source_lemmas, reference_lemmas;
  StopwordArgs stopwords;
  bool tagged = false;
  std::string out_dir;
};

int run_annotate(const AnnotateArgs& args) {
  auto stopwords = resolve_stopwords(args.stopwords);
  auto terminology = load_terminology_file(args.terminology);
  auto src_lines = read_lines_file(args.source);
  auto ref_lines = read_lines_file(args.reference);

  AnnotateResult surface;
  if (args.tagged) {
    if (!args.source_lemmas.empty() || !args.reference_lemmas.empty()) {
      throw Error("--tagged input carries its own spans; lemma matching does not apply");
    }
    if (src_lines.size() != ref_lines.size()) {
      throw Error("tagged corpus: source/reference line counts differ");
    }
    for (std::size_t i = 0; i < src_lines.size(); ++i) {
      surface.segments.push_back(parse_inline_tags(src_lines[i], ref_lines[i], terminology,
                                                   stopwords, static_cast<int>(i)));
      surface.paired_occurrences +=
          static_cast<int>(surface.segments.back().occurrences.size());
    }
  } else {
    surface = annotate_corpus(src_lines, ref_lines, terminology, MatchMode::surface, stopwords);
  }

  std::optional<AnnotateResult> lemma;
  if (!args.source_lemmas.empty() || !args.reference_lemmas.empty()) {
    if (args.source_lemmas.empty() || args.reference_lemmas.empty()) {
      throw Error("lemma matching needs --source-lemmas and --reference-lemmas together");
    }
    auto src_lemmas = read_lines_file(args.source_lemmas);
    auto ref_lemmas = read_lines_file(args.reference_lemmas);
    lemma = annotate_corpus(src_lines, ref_lines, terminology, MatchMode::lemma, stopwords,
                            &src_lemmas, &ref_lemmas);
  }
  MatchCensus census = match_census(surface, lemma ? &*lemma : nullptr);

  // Canonical output: surface matches plus lemma-only matches that do not
  // collide with a same-entry surface span.
  auto segments = surface.segments;
  int skipped = 0;
  if (lemma) {
    for (std::size_t s = 0; s < segments.size(); ++s) {
      for (const auto& occ : lemma->segments[s].occurrences) {
        bool duplicate = false, collides = false;
        for (const auto& have : segments[s].occurrences) {
          if (have == occ) duplicate = true;
          if (have.entry_id == occ.entry_id && (have.src_span.overlaps(occ.src_span) ||
                                                have.ref_span.overlaps(occ.ref_span))) {
            collides = true;
          }
        }
        if (duplicate) continue;
        if (collides) {
          ++skipped;
          continue;
        }
        segments[s].occurrences.push_back(occ);
      }
      canonicalize_occurrences(segments[s].occurrences);
    }
  }
  if (skipped > 0) {
    std::cerr << "warning: " << skipped
              << " lemma-only matches overlapped surface matches of the same entry "
                 "and were not merged\n";
  }

  fs::create_directories(args.out_dir);
  {
    std::ostringstream buf;
    write_segments(buf, segments);
    write_text_file(fs::path(args.out_dir) / "segments.jsonl", buf.str());
  }
  {
    // Human verification sheet: one row per occurrence.
    std::ostringstream buf;
    buf << "segment_id\tentry_id\tsource_term\ttarget_term\tsrc_span\tref_span\n";
    for (const auto& seg : segments) {
      for (const auto& occ : seg.occurrences) {
        const TermEntry* e = terminology.find(occ.entry_id);
        buf << seg.segment_id << '\t' << occ.entry_id << '\t' << join_tokens(e->source_tokens)
            << '\t' << join_tokens(e->target_tokens) << '\t' << occ.src_span.begin << ':'
            << occ.src_span.end << '\t' << occ.ref_span.begin << ':' << occ.ref_span.end
            << '\n';
      }
    }
    write_text_file(fs::path(args.out_dir) / "annotation_review.tsv", buf.str());
  }
  {
    std::ostringstream buf;
    buf << "surface_matches\tlemma_additional\ttotal\tunpaired_source\tunpaired_reference\n";
    buf << census.surface_matches << '\t' << format_count(census.lemma_additional) << '\t'
        << census.total << '\t' << surface.unpaired_source << '\t' << surface.unpaired_reference
        << '\n';
    write_text_file(fs::path(args.out_dir) / "census.tsv", buf.str());
  }
  if (terminology.entries.empty()) {
    std::cerr << "warning: empty terminology, no occurrences can be annotated\n";
  }
  std::cout << "segments: " << segments.size() << "\n";
  std::cout << "surface matches: " << census.surface_matches << "\n";
  std::cout << "lemma-only additional: " << format_count(census.lemma_additional) << "\n";
  std::cout << "total matches: " << census.total << "\n";
  std::cout << "unpaired source/reference matches: " << surface.unpaired_source << "/"
            << surface.unpaired_reference << "\n";
  return 0;
}

// --- evaluate ---------------------------------------------------------------

struct EvaluateArgs {
  std::string segments, terminology;
  StopwordArgs stopwords;
  std::vector<std::string> hyps;
  std::vector<std::string> cheating_names;
  std::vector<std::string> alignments;
  std::string alignment_mode = "bilingual";
  std::vector<int> windows{2, 3};
  std::vector<int> ks{2, 3};
  double c_term = 2.0;
  std::string ter_normalizer = "weighted";
  std::string ter_average = "micro";
  bool no_term_bleu = false;
  bool emit_phrases = false;
  unsigned jobs = 1;
  std::string out_dir;
};

int run_evaluate(const EvaluateArgs& args) {
  if (args.c_term < 1.0) {
    throw Error("--c-term must be > 1 (or exactly 1 for standard TER)");
  }
  auto stopwords = resolve_stopwords(args.stopwords);

  EvalCorpus corpus;
  corpus.stopwords = std::move(stopwords);
  corpus.terminology = load_terminology_file(args.terminology);
  corpus.segments = read_segments_file(args.segments, corpus.terminology, corpus.stopwords);
  corpus.validate();

  std::map<std::string, std::vector<WordAlignment>> alignment_files;
  for (const auto& arg : args.alignments) {
    auto [name, path] = split_named_path(arg);
    alignment_files[name] = load_pharaoh_file(path);
  }
  const bool bilingual = args.alignment_mode == "bilingual";

  EvalOptions options;
  options.windows = args.windows;
  options.ks = args.ks;
  options.c_term = args.c_term;
  options.ter_normalizer =
      args.ter_normalizer == "plain" ? TerNormalizer::plain : TerNormalizer::weighted;
  options.ter_average = args.ter_average == "macro" ? TerAverage::macro : TerAverage::micro;
  options.term_bleu_metrics = !args.no_term_bleu;
  options.jobs = args.jobs;

  std::vector<SystemEvaluation> evaluations;
  std::vector<std::string> names;
  for (const auto& arg : args.hyps) {
    auto [name, path] = split_named_path(arg);
    auto hyps = load_hypotheses_file(path, corpus.stopwords);
    if (hyps.size() != corpus.segments.size()) {
      throw Error(path + ": " + std::to_string(hyps.size()) + " hypotheses for " +
                  std::to_string(corpus.segments.size()) + " segments");
    }
    const std::vector<WordAlignment>* bil = nullptr;
    const std::vector<WordAlignment>* mono = nullptr;
    auto it = alignment_files.find(name);
    if (it != alignment_files.end()) {
      if (it->second.size() != corpus.segments.size()) {
        throw Error("alignments for '" + name + "': " + std::to_string(it->second.size()) +
                    " lines for " + std::to_string(corpus.segments.size()) + " segments");
      }
      (bilingual ? bil : mono) = &it->second;
    }
    auto eval = evaluate_system(corpus, hyps, name, options, bil, mono);
    for (const auto& cheat_name : args.cheating_names) {
      if (cheat_name == name) eval.report.is_cheating = true;
    }
    names.push_back(name);
    evaluations.push_back(std::move(eval));
  }
  if (evaluations.empty()) throw Error("evaluate: no --hyp given");

  fs::create_directories(args.out_dir);
  std::vector<SystemReport> reports;
  for (const auto& e : evaluations) reports.push_back(e.report);
  write_text_file(fs::path(args.out_dir) / "report.tsv", render_report_tsv(reports));
  write_text_file(fs::path(args.out_dir) / "report.md", render_report_markdown(reports));

  for (std::size_t i = 0; i < evaluations.size(); ++i) {
    const auto& eval = evaluations[i];
    const auto& name = names[i];
    {
      std::ostringstream buf;
      write_match_results(buf, eval.matches.results);
      write_text_file(fs::path(args.out_dir) / (name + ".matches.jsonl"), buf.str());
    }
    {
      std::ostringstream buf;
      write_ter_results(buf, eval.term_ter.per_segment);
      write_text_file(fs::path(args.out_dir) / (name + ".ter.jsonl"), buf.str());
    }
    for (const auto& [n, outcome] : eval.windows) {
      std::ostringstream buf;
      write_window_scores(buf, outcome.details);
      write_text_file(fs::path(args.out_dir) / (name + ".windows.n" + std::to_string(n) +
                                                ".jsonl"),
                      buf.str());
    }
    {
      // Scatter feed: per segment, 1-TERm against the mean window overlap
      // at the first configured window size.
      const int n0 = options.windows.empty() ? 2 : options.windows.front();
      std::map<int, std::pair<double, int>> per_segment;  // id -> (sum, count)
      auto it = eval.windows.find(n0);
      if (it != eval.windows.end()) {
        for (const auto& w : it->second.details) {
          per_segment[w.segment_id].first += w.overlap;
          per_segment[w.segment_id].second += 1;
        }
      }
      std::ostringstream buf;
      buf << "segment_id\tone_minus_term\twindow_overlap_" << n0 << "\tsystem\n";
      for (std::size_t s = 0; s < eval.term_ter.per_segment.size(); ++s) {
        const auto& ter_result = eval.term_ter.per_segment[s];
        buf << s << '\t' << format_percent(ter_result.one_minus_score()) << '\t';
        auto ps = per_segment.find(static_cast<int>(s));
        if (ps == per_segment.end()) {
          buf << "N/A";
        } else {
          buf << format_percent(ps->second.first / ps->second.second);
        }
        buf << '\t' << name << '\n';
      }
      write_text_file(fs::path(args.out_dir) / (name + ".scatter.tsv"), buf.str());
    }
    if (args.emit_phrases) {
      for (const auto& [k, pairs] : eval.phrases) {
        std::ostringstream ref_buf, hyp_buf;
        for (const auto& p : pairs) {
          ref_buf << join_tokens(p.ref_phrase) << '\n';
          hyp_buf << join_tokens(p.hyp_phrase) << '\n';
        }
        const std::string stem = name + ".phrases.k" + std::to_string(k);
        write_text_file(fs::path(args.out_dir) / (stem + ".ref.txt"), ref_buf.str());
        write_text_file(fs::path(args.out_dir) / (stem + ".hyp.txt"), hyp_buf.str());
      }
    }
  }
  std::cout << render_report_tsv(reports);
  return 0;
}

// --- cheat ------------------------------------------------------------------

struct CheatArgs {
  std::string segments, terminology;
  StopwordArgs stopwords;
  std::string hyp;
  std::string style = "smart";
  std::string out;
};

int run_cheat(const CheatArgs& args) {
  auto stopwords = resolve_stopwords(args.stopwords);
  EvalCorpus corpus;
  corpus.stopwords = std::move(stopwords);
  corpus.terminology = load_terminology_file(args.terminology);
  corpus.segments = read_segments_file(args.segments, corpus.terminology, corpus.stopwords);
  corpus.validate();

  auto hyps = load_hypotheses_file(args.hyp, corpus.stopwords);
  if (hyps.size() != corpus.segments.size()) {
    throw Error(args.hyp + ": " + std::to_string(hyps.size()) + " hypotheses for " +
                std::to_string(corpus.segments.size()) + " segments");
  }
  auto cheated = args.style == "naive" ? naive_cheat(corpus, hyps) : smart_cheat(corpus, hyps);
  std::ostringstream buf;
  for (const auto& h : cheated) buf << join_tokens(surfaces(h.tokens)) << '\n';
  write_text_file(args.out, buf.str());
  return 0;
}

// --- correlate ----------------------------------------------------------------

struct CorrelateArgs {
  std::vector<std::string> reports;
  bool show_all = false;
  std::string out;
};

int run_correlate(const CorrelateArgs& args) {
  std::vector<SystemReport> pooled;
  for (const auto& path : args.reports) {
    for (auto& r : parse_report_tsv_file(path)) pooled.push_back(std::move(r));
  }
  if (pooled.size() < 3) {
    throw Error("correlate: need at least 3 systems, got " + std::to_string(pooled.size()));
  }
  auto cells = metric_correlations(pooled);
  auto table = render_correlation_table(cells, args.show_all);
  std::cout << table;
  if (!args.out.empty()) write_text_file(args.out, table);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Terminology-consistency evaluation for machine translation"};
  app.require_subcommand(1);

  AnnotateArgs annotate_args;
  auto* annotate = app.add_subcommand(
      "annotate", "Project terminology matches onto a parallel test set");
  annotate->add_option("--source", annotate_args.source, "Tokenized source text")->required();
  annotate->add_option("--reference", annotate_args.reference, "Tokenized reference text")
      ->required();
  annotate->add_option("--terminology", annotate_args.terminology, "TSV src\\ttgt terminology")
      ->required();
  annotate->add_option("--source-lemmas", annotate_args.source_lemmas,
                       "Token-parallel lemma lines for the source");
  annotate->add_option("--reference-lemmas", annotate_args.reference_lemmas,
                       "Token-parallel lemma lines for the reference");
  annotate->add_flag("--tagged", annotate_args.tagged,
                     "Source/reference carry inline <term id=\"N\"> annotations");
  add_stopword_flags(annotate, annotate_args.stopwords);
  annotate->add_option("--out-dir", annotate_args.out_dir, "Output directory")->required();

  EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "Score hypothesis files against a corpus");
  evaluate->add_option("--segments", eval_args.segments, "Canonical segment file (JSONL)")
      ->required();
  evaluate->add_option("--terminology", eval_args.terminology, "TSV terminology")->required();
  add_stopword_flags(evaluate, eval_args.stopwords);
  evaluate->add_option("--hyp", eval_args.hyps, "Hypothesis file, optionally name=path")
      ->required();
  evaluate->add_option("--cheating", eval_args.cheating_names,
                       "Mark this system name as a cheating baseline in reports");
  evaluate->add_option("--alignments", eval_args.alignments,
                       "Per-system alignment file, name=path (Pharaoh, one line per segment)");
  evaluate
      ->add_option("--alignment-mode", eval_args.alignment_mode,
                   "bilingual: source<->hypothesis, enables the alignment-based match; "
                   "monolingual: hypothesis<->reference, overrides the built-in aligner")
      ->check(CLI::IsMember({"bilingual", "monolingual"}));
  evaluate->add_option("--windows", eval_args.windows, "Window-overlap sizes")
      ->delimiter(',');
  evaluate->add_option("--ks", eval_args.ks, "Term-BLEU context widths")->delimiter(',');
  evaluate->add_option("--c-term", eval_args.c_term, "Edit cost of terminology tokens");
  evaluate
      ->add_option("--ter-normalizer", eval_args.ter_normalizer,
                   "weighted: schema-weighted reference length; plain: |ref|")
      ->check(CLI::IsMember({"weighted", "plain"}));
  evaluate->add_option("--ter-average", eval_args.ter_average, "micro or macro corpus TER")
      ->check(CLI::IsMember({"micro", "macro"}));
  evaluate->add_flag("--no-term-bleu", eval_args.no_term_bleu,
                     "Skip Term-BLEU and exact-order metrics");
  evaluate->add_flag("--emit-phrases", eval_args.emit_phrases,
                     "Write the term-centered phrase-pair corpus for external metrics");
  evaluate->add_option("--jobs", eval_args.jobs, "Worker threads (results are identical)");
  evaluate->add_option("--out-dir", eval_args.out_dir, "Output directory")->required();

  CheatArgs cheat_args;
  auto* cheat = app.add_subcommand("cheat", "Synthesize a term-appending adversarial output");
  cheat->add_option("--segments", cheat_args.segments, "Canonical segment file")->required();
  cheat->add_option("--terminology", cheat_args.terminology, "TSV terminology")->required();
  add_stopword_flags(cheat, cheat_args.stopwords);
  cheat->add_option("--hyp", cheat_args.hyp, "Hypothesis file to transform")->required();
  cheat->add_option("--style", cheat_args.style, "smart: append missing terms; naive: append all")
      ->check(CLI::IsMember({"smart", "naive"}));
  cheat->add_option("--out", cheat_args.out, "Transformed hypothesis file")->required();

  CorrelateArgs corr_args;
  auto* correlate = app.add_subcommand("correlate", "Spearman correlations across systems");
  correlate->add_option("--report", corr_args.reports, "report.tsv files (rows are pooled)")
      ->required();
  correlate->add_flag("--show-all", corr_args.show_all,
                      "Render correlations even when p > 0.2");
  correlate->add_option("--out", corr_args.out, "Also write the table here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*annotate) return run_annotate(annotate_args);
    if (*evaluate) return run_evaluate(eval_args);
    if (*cheat) return run_cheat(cheat_args);
    if (*correlate) return run_correlate(corr_args);
  } catch (const std::exception& e) {
    std::cerr << "termeval: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
