// vista: command-line front end.
//
// Exit codes: 0 success, 1 validation or scoring failure, 2 usage error,
// 3 I/O or network failure. Data goes to stdout (or --out); logs to stderr.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vista/vista.hpp"

namespace fs = std::filesystem;
using namespace vista;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

class UsageError : public Error {
 public:
  using Error::Error;
};

void emit(const std::string& out_path, const std::string& data) {
  if (out_path.empty() || out_path == "-") {
    std::cout << data;
    std::cout.flush();
  } else {
    write_file(out_path, data);
  }
}

void log(const std::string& msg) { std::cerr << "vista: " << msg << "\n"; }

// ---------------------------------------------------------------------------
// Shared option groups

struct MatchFlags {
  std::int64_t window = -1;
  bool labeled = false;
  bool no_root = false;
  bool no_backbone = false;
  bool macro = false;
  bool role_agnostic = false;

  void attach(CLI::App* app) {
    app->add_option("--window", window, "word-window span matching with tolerance k (default: exact)");
    app->add_flag("--labeled", labeled, "dependency match also requires the child role");
    app->add_flag("--no-root", no_root, "exclude ROOT attachments from dependency scoring");
    app->add_flag("--no-backbone", no_backbone, "exclude Impulse-to-Impulse edges from dependency scoring");
    app->add_flag("--macro", macro, "macro-average over documents (default: micro)");
    app->add_flag("--role-agnostic", role_agnostic, "anchor match ignores the role");
  }

  MatchConfig config() const {
    MatchConfig c;
    if (window >= 0) c.span_match = SpanMatch::word_window(window);
    c.dep_labeled = labeled;
    c.include_root_edges = !no_root;
    c.include_backbone_edges = !no_backbone;
    c.aggregation = macro ? Aggregation::Macro : Aggregation::Micro;
    c.role_required_for_anchor = !role_agnostic;
    return c;
  }
};

struct CorpusFlags {
  std::string data;
  std::string split = "test";
  std::string graphs;

  void attach(CLI::App* app) {
    app->add_option("--data", data, "dataset root containing train/ val/ test/");
    app->add_option("--split", split, "split name, or 'all' where supported")
        ->check(CLI::IsMember({"train", "val", "test", "all"}));
    app->add_option("--graphs", graphs, "directory of graph files (instead of --data)");
  }

  std::vector<NarrativeGraph> load() const {
    if (!graphs.empty()) return load_graph_dir(graphs);
    if (data.empty()) throw UsageError("one of --data or --graphs is required");
    if (split == "all") {
      std::vector<NarrativeGraph> all;
      for (auto name : kSplitNames) {
        auto part = load_split(data, name);
        all.insert(all.end(), part.begin(), part.end());
      }
      return all;
    }
    return load_split(data, split);
  }
};

std::string format_prf_line(const std::string& label, const Prf& p) {
  return label + "\tP=" + format_fixed(p.precision) + "\tR=" + format_fixed(p.recall) +
         "\tF1=" + format_fixed(p.f1) + "\ttp=" + std::to_string(p.tp) + "\tfp=" +
         std::to_string(p.fp) + "\tfn=" + std::to_string(p.fn) + "\n";
}

std::string render_result(const EvalResult& r, const std::string& format, const std::string& model) {
  if (format == "json") return to_json(r).dump(2) + "\n";
  if (format == "csv") return std::string(kScoreCsvHeader) + "\n" + score_csv_row(model, r) + "\n";
  return format_prf_line("anchor", r.anchor) + format_prf_line("dependency", r.dependency) +
         "harmonic\t" + format_fixed(r.harmonic) + "\n";
}

// ---------------------------------------------------------------------------
// validate

int cmd_validate(const std::vector<std::string>& files, const std::string& mode_name,
                 const std::string& out) {
  const auto mode = mode_name == "relaxed" ? ValidationMode::Relaxed : ValidationMode::Strict;
  std::string report;
  bool all_valid = true;
  for (const auto& f : files) {
    const auto g = read_graph_file(f);
    const auto r = validate(g, mode);
    for (const auto& note : r.notes) log(f + ": " + note);
    if (r.valid()) {
      report += f + "\tvalid\n";
      continue;
    }
    all_valid = false;
    for (const auto& v : r.violations) {
      report += f + "\t" + std::to_string(v.anchor_id) + "\t" + std::string(to_string(v.kind)) +
                "\t" + v.message + "\n";
    }
  }
  emit(out, report);
  return all_valid ? kOk : kFailure;
}

// ---------------------------------------------------------------------------
// convert

NarrativeGraph graph_from_rows(const PredictionRows& rows, std::string text, std::string doc_id) {
  NarrativeGraph g;
  g.doc_id = std::move(doc_id);
  g.text = std::move(text);
  for (const auto& r : rows) g.anchors.push_back({r.id, r.span, r.word, r.category, r.head});
  return g;
}

PredictionRows rows_from_graph(const NarrativeGraph& g) {
  PredictionRows rows;
  for (const auto& a : g.anchors) {
    if (!is_event(a.role)) {
      log("anchor " + std::to_string(a.id) + " is NonEvent; omitted from the table");
      continue;
    }
    rows.push_back({a.id, a.role, a.span, a.word, a.head});
  }
  return rows;
}

int cmd_convert(const std::string& from, const std::string& to, const std::string& input,
                const std::string& text_path, std::string doc_id, const std::string& policy,
                const std::string& out) {
  if (doc_id.empty()) doc_id = fs::path(input).stem().string();
  NarrativeGraph g;
  if (from == "graph") {
    g = read_graph_file(input);
  } else if (from == "inline") {
    g = parse_inline(read_file(input), doc_id).graph;
  } else {
    if (text_path.empty()) throw UsageError("--from tsv needs --text");
    g = graph_from_rows(parse_prediction_table_strict(read_file(input)), read_file(text_path), doc_id);
  }
  if (to == "graph") {
    emit(out, serialize_graph(g));
  } else if (to == "tsv") {
    emit(out, serialize_prediction_table(rows_from_graph(g)));
  } else {
    const auto p = policy == "minimal" ? IndexPolicy::Minimal : IndexPolicy::All;
    emit(out, serialize_inline(g, p));
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// score

int cmd_score(const std::string& pred_dir, const std::string& gold_dir, const MatchFlags& mf,
              const std::string& format, const std::string& model, const std::string& out) {
  const auto gold = load_graph_dir(gold_dir);
  if (!fs::is_directory(pred_dir)) throw IoError("not a directory: " + pred_dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(pred_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".tsv") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::map<std::string, PredictionRows> preds;
  for (const auto& f : files) {
    auto parsed = parse_model_output_tolerant(read_file(f));
    const auto& d = parsed.diagnostics;
    const auto skipped = d.skipped_lines - d.header_lines;
    if (skipped > 0 || d.repaired_rows > 0) {
      log(f.string() + ": skipped " + std::to_string(skipped) + " lines, repaired " +
          std::to_string(d.repaired_rows) + " rows");
    }
    preds[f.stem().string()] = std::move(parsed.rows);
  }
  const auto result = score_run(preds, gold, mf.config());
  for (const auto& w : result.warnings) log(w);
  emit(out, render_result(result, format, model));
  return kOk;
}

// ---------------------------------------------------------------------------
// run

int cmd_run(const std::string& model_path, const std::string& mode_name, const std::string& data,
            const std::string& split, const std::string& cache_dir, const std::string& out_dir,
            int jobs, const MatchFlags& mf, const std::string& format, const std::string& out) {
  const auto cfg = load_model_config(model_path);
  const auto mode = parse_run_mode(mode_name);
  if (!mode) throw UsageError("unknown mode '" + mode_name + "'");
  if (data.empty()) throw UsageError("--data is required");
  const auto gold = load_split(data, split);
  auto backend = make_backend(cfg);

  RunOptions opts;
  opts.mode = *mode;
  opts.match = mf.config();
  opts.split = split;
  if (!cache_dir.empty()) opts.cache_dir = cache_dir;
  if (!out_dir.empty()) opts.out_dir = out_dir;
  if (jobs > 0) opts.jobs = jobs;

  const auto run = run_evaluation(gold, cfg, *backend, opts);
  std::size_t failed = 0;
  for (const auto& d : run.manifest.docs) {
    if (d.status == DocStatusKind::Failed) {
      ++failed;
      log(d.doc_id + ": " + d.error);
    }
  }
  log("run " + run.manifest.run_id + ": " + std::to_string(run.manifest.docs.size()) +
      " documents, " + std::to_string(failed) + " failed, " + std::to_string(backend->calls()) +
      " backend calls");
  emit(out, render_result(run.result, format, cfg.name));
  return (!gold.empty() && failed == gold.size()) ? kIo : kOk;
}

// ---------------------------------------------------------------------------
// stats / analyze / baseline

int cmd_stats(const CorpusFlags& cf, const std::string& cross, std::int64_t threshold,
              const std::string& out) {
  const auto def = cross == "long-range" ? CrossDefinition::long_range(threshold)
                                         : CrossDefinition::crossing();
  std::string csv = std::string(kCorpusStatsCsvHeader) + "\n";
  if (cf.graphs.empty() && cf.split == "all") {
    for (auto name : kSplitNames) {
      csv += corpus_stats_csv_row(name, corpus_stats(load_split(cf.data, name), def)) + "\n";
    }
  } else {
    const std::string label = cf.graphs.empty() ? cf.split : fs::path(cf.graphs).filename().string();
    csv += corpus_stats_csv_row(label, corpus_stats(cf.load(), def)) + "\n";
  }
  emit(out, csv);
  return kOk;
}

std::vector<std::int64_t> parse_buckets(const std::string& spec) {
  if (spec.empty()) return default_bucket_edges();
  std::vector<std::int64_t> edges;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto v = detail::parse_int(detail::trim(tok));
    if (!v) throw UsageError("bad bucket edge '" + tok + "'");
    edges.push_back(*v);
  }
  return edges;
}

int cmd_distances(const CorpusFlags& cf, const std::string& buckets, const std::string& by,
                  const std::string& svg, const std::string& out) {
  const auto table = distance_histogram(
      cf.load(), parse_buckets(buckets),
      by == "pair" ? DistanceClassifier::RolePair : DistanceClassifier::ChildRole);
  if (!svg.empty()) write_svg(svg, emit_heatmap_svg(table, "dependency distance"));
  emit(out, distance_table_csv(table));
  return kOk;
}

int cmd_lexicon(const CorpusFlags& cf, std::int64_t min_freq, const std::string& svg,
                const std::string& out) {
  const auto stats = lexical_role_space(cf.load(), min_freq);
  if (!svg.empty()) {
    ScatterOptions o;
    o.title = "lexical role preference";
    o.x_label = "Impulse - Resonance";
    o.y_label = "Pause - Resonance";
    o.x_range = std::pair{-1.0, 1.0};
    o.y_range = std::pair{-1.0, 1.0};
    write_svg(svg, emit_scatter_svg(lexicon_points(stats), o));
  }
  emit(out, lexicon_csv(stats));
  return kOk;
}

int cmd_shape(const std::string& graph_path, double delta, const std::string& out) {
  emit(out, story_shape_csv(story_shape_export(read_graph_file(graph_path), DeltaConfig(delta))));
  return kOk;
}

int cmd_baseline(const std::string& graph_path, const std::string& text_path,
                 const std::string& cand_path, const std::string& lexicon_path,
                 const std::string& out) {
  std::string text;
  std::optional<CandidateList> cands;
  if (!graph_path.empty()) {
    const auto g = read_graph_file(graph_path);
    text = g.text;
    cands = candidates_from_graph(g);
  } else {
    if (text_path.empty()) throw UsageError("baseline needs --graph or --text");
    text = read_file(text_path);
    if (!cand_path.empty()) cands = parse_candidate_list(read_file(cand_path));
  }
  std::optional<LexicalRoleStats> lex;
  if (!lexicon_path.empty()) lex = parse_lexicon_csv(read_file(lexicon_path));
  emit(out, serialize_prediction_table(heuristic_baseline(text, cands, lex ? &*lex : nullptr)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Narrative event topology toolkit"};
  app.require_subcommand(1);
  std::string out;
  app.add_option("--out", out, "output file (default: stdout)");

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "check graph files against topology rules");
  std::vector<std::string> validate_files;
  std::string validate_mode = "strict";
  validate_cmd->add_option("files", validate_files, "graph JSON files")->required();
  validate_cmd->add_option("--mode", validate_mode, "strict or relaxed")
      ->check(CLI::IsMember({"strict", "relaxed"}));
  validate_cmd->add_option("--out", out, "output file (default: stdout)");

  // convert
  auto* convert_cmd = app.add_subcommand("convert", "convert between tsv, inline and graph formats");
  std::string conv_from, conv_to, conv_input, conv_text, conv_doc_id, conv_policy = "all";
  const auto formats = CLI::IsMember({"tsv", "inline", "graph"});
  convert_cmd->add_option("input", conv_input, "input file")->required();
  convert_cmd->add_option("--from", conv_from, "input format")->required()->check(formats);
  convert_cmd->add_option("--to", conv_to, "output format")->required()->check(formats);
  convert_cmd->add_option("--text", conv_text, "document text file (for --from tsv)");
  convert_cmd->add_option("--doc-id", conv_doc_id, "document id (default: input file stem)");
  convert_cmd->add_option("--index-policy", conv_policy, "inline index policy: all or minimal")
      ->check(CLI::IsMember({"all", "minimal"}));
  convert_cmd->add_option("--out", out, "output file (default: stdout)");

  // score
  auto* score_cmd = app.add_subcommand("score", "score prediction tables against gold graphs");
  std::string score_pred, score_gold, score_format = "text", score_model = "model";
  MatchFlags score_match;
  score_cmd->add_option("--pred", score_pred, "directory of <doc_id>.tsv predictions")->required();
  score_cmd->add_option("--gold", score_gold, "directory of gold graph files")->required();
  score_cmd->add_option("--format", score_format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  score_cmd->add_option("--model", score_model, "model label for csv output");
  score_cmd->add_option("--out", out, "output file (default: stdout)");
  score_match.attach(score_cmd);

  // run
  auto* run_cmd = app.add_subcommand("run", "run a model over a split and score it");
  std::string run_model, run_mode = "oracle", run_data, run_split = "test", run_cache, run_out_dir,
                         run_format = "text";
  int run_jobs = 0;
  MatchFlags run_match;
  run_cmd->add_option("--model", run_model, "model config JSON")->required();
  run_cmd->add_option("--mode", run_mode, "oracle or e2e")
      ->check(CLI::IsMember({"oracle", "e2e", "end_to_end"}));
  run_cmd->add_option("--data", run_data, "dataset root")->required();
  run_cmd->add_option("--split", run_split, "split name")
      ->check(CLI::IsMember({"train", "val", "test"}));
  run_cmd->add_option("--cache", run_cache, "response cache directory");
  run_cmd->add_option("--run-dir", run_out_dir, "directory for raw responses, predictions, manifest");
  run_cmd->add_option("--jobs", run_jobs, "maximum documents in flight")->check(CLI::PositiveNumber);
  run_cmd->add_option("--format", run_format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  run_cmd->add_option("--out", out, "output file (default: stdout)");
  run_match.attach(run_cmd);

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "corpus statistics per split");
  CorpusFlags stats_corpus;
  std::string stats_cross = "crossing";
  std::int64_t stats_threshold = 100;
  stats_corpus.attach(stats_cmd);
  stats_cmd->add_option("--cross", stats_cross, "crossing or long-range")
      ->check(CLI::IsMember({"crossing", "long-range"}));
  stats_cmd->add_option("--threshold", stats_threshold, "long-range distance threshold");
  stats_cmd->add_option("--out", out, "output file (default: stdout)");

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "distance, lexicon and story-shape exports");
  analyze_cmd->require_subcommand(1);
  auto* dist_cmd = analyze_cmd->add_subcommand("distances", "dependency distance histogram");
  CorpusFlags dist_corpus;
  std::string dist_buckets, dist_by = "child", dist_svg;
  dist_corpus.attach(dist_cmd);
  dist_cmd->add_option("--buckets", dist_buckets, "comma-separated bucket edges starting at 0");
  dist_cmd->add_option("--by", dist_by, "child or pair")->check(CLI::IsMember({"child", "pair"}));
  dist_cmd->add_option("--svg", dist_svg, "also write a heatmap SVG");
  dist_cmd->add_option("--out", out, "output file (default: stdout)");

  auto* lex_cmd = analyze_cmd->add_subcommand("lexicon", "lexical role-preference coordinates");
  CorpusFlags lex_corpus;
  std::int64_t lex_min_freq = 1;
  std::string lex_svg;
  lex_corpus.attach(lex_cmd);
  lex_cmd->add_option("--min-freq", lex_min_freq, "minimum occurrences")->check(CLI::PositiveNumber);
  lex_cmd->add_option("--svg", lex_svg, "also write a scatter SVG");
  lex_cmd->add_option("--out", out, "output file (default: stdout)");

  auto* shape_cmd = analyze_cmd->add_subcommand("shape", "coordinate records for one graph");
  std::string shape_graph;
  double shape_delta = 0.5;
  shape_cmd->add_option("graph", shape_graph, "graph JSON file")->required();
  shape_cmd->add_option("--delta", shape_delta, "marginal increment in (0,1)");
  shape_cmd->add_option("--out", out, "output file (default: stdout)");

  // baseline
  auto* base_cmd = app.add_subcommand("baseline", "heuristic no-network predictions");
  std::string base_graph, base_text, base_cands, base_lex;
  base_cmd->add_option("--graph", base_graph, "graph file supplying text and candidates");
  base_cmd->add_option("--text", base_text, "document text file");
  base_cmd->add_option("--candidates", base_cands, "candidate list file");
  base_cmd->add_option("--lexicon", base_lex, "lexicon CSV from 'analyze lexicon'");
  base_cmd->add_option("--out", out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(validate_files, validate_mode, out);
    if (*convert_cmd) {
      return cmd_convert(conv_from, conv_to, conv_input, conv_text, conv_doc_id, conv_policy, out);
    }
    if (*score_cmd) return cmd_score(score_pred, score_gold, score_match, score_format, score_model, out);
    if (*run_cmd) {
      return cmd_run(run_model, run_mode, run_data, run_split, run_cache, run_out_dir, run_jobs,
                     run_match, run_format, out);
    }
    if (*stats_cmd) return cmd_stats(stats_corpus, stats_cross, stats_threshold, out);
    if (*dist_cmd) return cmd_distances(dist_corpus, dist_buckets, dist_by, dist_svg, out);
    if (*lex_cmd) return cmd_lexicon(lex_corpus, lex_min_freq, lex_svg, out);
    if (*shape_cmd) return cmd_shape(shape_graph, shape_delta, out);
    if (*base_cmd) return cmd_baseline(base_graph, base_text, base_cands, base_lex, out);
  } catch (const UsageError& e) {
    log(e.what());
    std::cerr << app.help();
    return kUsage;
  } catch (const IoError& e) {
    log(e.what());
    return kIo;
  } catch (const RunnerError& e) {
    log(e.what());
    return kIo;
  } catch (const DatasetError& e) {
    log(e.what());
    return e.kind() == DatasetError::Kind::InvalidGoldGraph ? kFailure : kIo;
  } catch (const std::exception& e) {
    log(e.what());
    return kFailure;
  }
  return kUsage;
}
