#include "causalmt/cli.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "causalmt/causal.hpp"
#include "causalmt/corpus.hpp"
#include "causalmt/embed.hpp"
#include "causalmt/extraction.hpp"
#include "causalmt/manifest.hpp"
#include "causalmt/match.hpp"
#include "causalmt/mixture.hpp"
#include "causalmt/report.hpp"
#include "causalmt/rng.hpp"
#include "causalmt/stats.hpp"
#include "causalmt/text.hpp"
#include "causalmt/types.hpp"
#include "causalmt/unicode.hpp"

namespace causalmt {
namespace {

namespace fs = std::filesystem;

// Bad flag combinations detected after CLI11 parsing; exits with code 1
// like any other usage problem.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& content, const std::string& out) {
  if (out.empty()) {
    std::cout << content;
    return;
  }
  fs::path p(out);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot open " + out + " for writing");
  f << content;
  if (!f) throw Error("write to " + out + " failed");
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::pair<LanguageCode, LanguageCode> parse_lang_pair_arg(const std::string& arg) {
  auto parts = split_commas(arg);
  if (parts.size() != 2)
    throw UsageError("expected two comma-separated language codes, got '" + arg + "'");
  try {
    auto a = LanguageCode::parse(parts[0]);
    auto b = LanguageCode::parse(parts[1]);
    if (a == b) throw UsageError("language codes must differ, got '" + arg + "'");
    return {a, b};
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

// Strips a trailing .jsonl so split outputs inherit the input's base name.
std::string base_name(const fs::path& path) {
  std::string name = path.filename().string();
  const std::string ext = ".jsonl";
  if (name.size() > ext.size() && name.ends_with(ext))
    name.resize(name.size() - ext.size());
  return name;
}

struct Options {
  std::uint64_t seed = 42;
  bool strict = false;
  bool provenance = false;
  bool mean = false;
  std::string format = "tsv";
  std::string out;

  std::string in;
  std::vector<std::string> ins;
  std::string langs;
  std::size_t dev_n = 0;
  std::size_t test_n = 0;

  std::string aligned;
  std::string unaligned;
  int alpha = 0;
  std::size_t total = 0;

  std::string corpus_a;
  std::string corpus_b;

  std::string mono_text;
  std::string mono_ids;
  std::string translations;
  std::string mono_lang;
  std::string target_lang;
  std::string method;
  std::string task;

  std::string embeddings;
  std::string corpus;
  std::string causal;
  std::string anticausal;
  std::string match_lang;
  double min_cosine = -1.0;
  double max_ratio = -1.0;
  std::size_t cap = 0;
  bool greedy = false;

  std::string pair;
  std::string alphas = "0,25,50,75,100";
  bool matched = false;
  bool ssl = false;
  std::string root;

  std::string scores;
  std::string manifests;
  std::string table = "all";
};

LanguageCode parse_lang_arg(const std::string& arg) {
  try {
    return LanguageCode::parse(arg);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

Direction parse_task_arg(const std::string& arg) {
  try {
    return Direction::parse_task(arg);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

void run_extract(const Options& opt) {
  if (opt.out.empty()) throw UsageError("extract requires --out <dir>");
  auto [x, y] = parse_lang_pair_arg(opt.langs);

  std::map<std::string, std::map<std::string, fs::path>> stems;
  for (const auto& entry : fs::directory_iterator(opt.in)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    if (ext == std::string(".") + std::string(x.str()) ||
        ext == std::string(".") + std::string(y.str()))
      stems[entry.path().stem().string()][ext.substr(1)] = entry.path();
  }
  if (stems.empty())
    throw Error("no ." + std::string(x.str()) + "/." + std::string(y.str()) +
                " transcript files in " + opt.in);

  std::vector<Utterance> all_x, all_y;
  for (const auto& [stem, sides] : stems) {
    auto it_x = sides.find(std::string(x.str()));
    auto it_y = sides.find(std::string(y.str()));
    if (it_x == sides.end() || it_y == sides.end())
      throw Error("transcript '" + stem + "' is missing its " +
                  std::string(it_x == sides.end() ? x.str() : y.str()) + " side");
    auto px = parse_transcript(slurp(it_x->second), x);
    auto py = parse_transcript(slurp(it_y->second), y);
    for (const auto& w : px.warnings)
      std::cerr << it_x->second.string() << ": " << w << '\n';
    for (const auto& w : py.warnings)
      std::cerr << it_y->second.string() << ": " << w << '\n';
    if (px.utterances.size() != py.utterances.size())
      throw Error("transcript '" + stem + "' has " +
                  std::to_string(px.utterances.size()) + " " + std::string(x.str()) +
                  " utterances but " + std::to_string(py.utterances.size()) + " " +
                  std::string(y.str()) + " utterances");
    for (std::size_t i = 0; i < px.utterances.size(); ++i) {
      auto& ux = px.utterances[i];
      auto& uy = py.utterances[i];
      if (ux.transcript_id != uy.transcript_id || ux.position != uy.position)
        throw Error("transcript '" + stem + "' utterance " + std::to_string(i) +
                    " is at " + ux.transcript_id + ":" + std::to_string(ux.position) +
                    " on the " + std::string(x.str()) + " side but " +
                    uy.transcript_id + ":" + std::to_string(uy.position) +
                    " on the " + std::string(y.str()) + " side");
      ux.transcript_id = stem + "." + ux.transcript_id;
      uy.transcript_id = stem + "." + uy.transcript_id;
      all_x.push_back(std::move(ux));
      all_y.push_back(std::move(uy));
    }
  }

  auto result = build_directed_corpora(all_x, all_y);
  fs::create_directories(opt.out);
  write_corpus(result.x_to_y,
               (fs::path(opt.out) / ("corpus." + result.x_to_y.direction.task_str() + ".jsonl"))
                   .string());
  write_corpus(result.y_to_x,
               (fs::path(opt.out) / ("corpus." + result.y_to_x.direction.task_str() + ".jsonl"))
                   .string());

  std::cerr << "kept " << result.x_to_y.pairs.size() << " "
            << result.x_to_y.direction.str() << " pairs, "
            << result.y_to_x.pairs.size() << " " << result.y_to_x.direction.str()
            << " pairs";
  if (!result.discard_reasons.empty()) {
    std::cerr << "; discarded";
    for (const auto& [reason, n] : result.discard_reasons)
      std::cerr << " " << n << " " << reason;
  }
  std::cerr << '\n';
}

void run_dedup(const Options& opt) {
  if (opt.out.empty()) throw UsageError("dedup requires --out <file>");
  auto corpus = read_corpus(opt.in);
  std::size_t before = corpus.pairs.size();
  auto cleaned = dedup(corpus);
  write_corpus(cleaned, opt.out);
  std::cerr << "removed " << (before - cleaned.pairs.size()) << " duplicates, kept "
            << cleaned.pairs.size() << '\n';
}

void run_split(const Options& opt) {
  if (opt.out.empty()) throw UsageError("split requires --out <dir>");
  auto corpus = read_corpus(opt.in);
  auto parts = split_train_dev_test(corpus, opt.dev_n, opt.test_n, opt.seed);
  fs::create_directories(opt.out);
  std::string base = base_name(fs::path(opt.in));
  write_corpus(parts.train, (fs::path(opt.out) / (base + ".train.jsonl")).string());
  write_corpus(parts.dev, (fs::path(opt.out) / (base + ".dev.jsonl")).string());
  write_corpus(parts.test, (fs::path(opt.out) / (base + ".test.jsonl")).string());
  std::cerr << "train " << parts.train.pairs.size() << ", dev " << parts.dev.pairs.size()
            << ", test " << parts.test.pairs.size() << '\n';
}

void run_stats(const Options& opt) {
  std::vector<std::pair<std::string, DirectedCorpus>> owned;
  for (const auto& path : opt.ins)
    owned.emplace_back(base_name(fs::path(path)), read_corpus(path));
  std::vector<std::pair<std::string, const DirectedCorpus*>> view;
  view.reserve(owned.size());
  for (const auto& [name, corpus] : owned) view.emplace_back(name, &corpus);
  write_text(render_corpus_stats(view, parse_out_format(opt.format)), opt.out);
}

void run_mix(const Options& opt) {
  if (opt.out.empty()) throw UsageError("mix requires --out <file>");
  auto aligned = read_corpus(opt.aligned);
  auto unaligned = read_corpus(opt.unaligned);
  MixtureSpec spec{opt.alpha, opt.total, opt.seed};
  auto mixed = make_mixture(aligned, unaligned, spec);
  write_mixture(mixed, opt.out);
  std::cerr << "mixed " << mixed.pairs.size() << " pairs at alpha " << opt.alpha << '\n';
}

void run_ssl_split(const Options& opt) {
  if (opt.out.empty()) throw UsageError("ssl-split requires --out <dir>");
  auto a = read_corpus(opt.corpus_a);
  auto b = read_corpus(opt.corpus_b);
  if (a.lang_pair != b.lang_pair)
    throw Error("corpora cover different language pairs (" + a.lang_pair.str() +
                " vs " + b.lang_pair.str() + ")");
  if (a.direction == b.direction)
    throw Error("both corpora have direction " + a.direction.str() +
                "; expected opposite translation directions");

  SplitMix64 root(opt.seed);
  std::uint64_t halve_seed = root.next();
  std::uint64_t sup_seed = root.next();
  auto halves = halve_for_ssl(a, b, halve_seed);

  fs::create_directories(opt.out);
  auto path_of = [&](const std::string& name) {
    return (fs::path(opt.out) / name).string();
  };
  std::string a_task = a.direction.task_str();
  std::string b_task = b.direction.task_str();

  write_corpus(halves.a_half1, path_of("corpus." + a_task + ".half1.jsonl"));
  write_corpus(halves.a_half2, path_of("corpus." + a_task + ".half2.jsonl"));
  write_corpus(halves.b_half1, path_of("corpus." + b_task + ".half1.jsonl"));
  write_corpus(halves.b_half2, path_of("corpus." + b_task + ".half2.jsonl"));

  MixedCorpus sup;
  sup.lang_pair = a.lang_pair;
  for (const auto& p : halves.a_half1.pairs) sup.pairs.push_back(p);
  for (const auto& p : halves.b_half1.pairs) sup.pairs.push_back(p);
  SplitMix64 sup_rng(sup_seed);
  shuffle(sup.pairs, sup_rng);
  write_mixture(sup, path_of("ssl." + a.lang_pair.str() + ".sup.jsonl"));

  auto mono_a = extract_monolingual(halves.a_half2, a.direction.origin);
  auto mono_b = extract_monolingual(halves.b_half2, b.direction.origin);
  write_monolingual(mono_a, path_of("mono." + a_task + ".txt"), path_of("mono." + a_task + ".ids"));
  write_monolingual(mono_b, path_of("mono." + b_task + ".txt"), path_of("mono." + b_task + ".ids"));

  std::cerr << "halved " << a.direction.str() << " into " << halves.a_half1.pairs.size() << "+"
            << halves.a_half2.pairs.size() << ", " << b.direction.str() << " into "
            << halves.b_half1.pairs.size() << "+" << halves.b_half2.pairs.size()
            << "; supervised mix " << sup.pairs.size() << " pairs\n";
}

void run_pseudo(const Options& opt) {
  if (opt.out.empty()) throw UsageError("pseudo requires --out <file>");
  auto mono = read_monolingual(opt.mono_text, opt.mono_ids);
  auto mono_lang = parse_lang_arg(opt.mono_lang);
  auto target_lang = parse_lang_arg(opt.target_lang);
  PseudoMethod method;
  try {
    method = parse_pseudo_method(opt.method);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  auto task = parse_task_arg(opt.task);

  std::ifstream in(opt.translations, std::ios::binary);
  if (!in) throw Error("cannot open " + opt.translations);
  std::vector<IdText> translated;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no >= mono.size())
      throw Error(opt.translations + ": has more lines than " + opt.mono_text);
    translated.push_back({mono[line_no].id, uni::nfc(normalize_ws(line))});
    ++line_no;
  }
  if (line_no < mono.size())
    throw Error(opt.translations + ": has " + std::to_string(line_no) +
                " lines but " + opt.mono_text + " has " + std::to_string(mono.size()));

  std::vector<IdText> mono_texts;
  mono_texts.reserve(mono.size());
  for (const auto& r : mono) mono_texts.push_back({r.id, r.text});

  auto corpus = build_pseudo_parallel(mono_texts, mono_lang, translated, target_lang,
                                      method, task);
  write_pseudo(corpus, opt.out);
  std::cerr << "built " << corpus.size() << " pseudo-parallel pairs ("
            << pseudo_method_name(method) << ")\n";
}

void run_embed(const Options& opt) {
  auto emb = load_embeddings(opt.embeddings);
  std::cout << "dim=" << emb.dim << " count=" << emb.by_id.size() << '\n';
  if (opt.corpus.empty()) return;
  auto corpus = read_corpus(opt.corpus);
  std::vector<std::string> missing;
  for (const auto& p : corpus.pairs)
    if (!emb.by_id.count(p.id)) missing.push_back(p.id);
  if (!missing.empty()) {
    std::string list;
    for (std::size_t i = 0; i < missing.size() && i < 10; ++i)
      list += (i ? ", " : "") + missing[i];
    if (missing.size() > 10)
      list += ", and " + std::to_string(missing.size() - 10) + " more";
    throw Error("embeddings miss " + std::to_string(missing.size()) + " of " +
                std::to_string(corpus.pairs.size()) + " pair ids: " + list);
  }
  std::cout << "covered=" << corpus.pairs.size() << "/" << corpus.pairs.size() << '\n';
}

void run_match(const Options& opt) {
  if (opt.out.empty()) throw UsageError("match requires --out <path prefix>");
  auto causal = read_corpus(opt.causal);
  auto anticausal = read_corpus(opt.anticausal);

  MatchOptions mopt;
  mopt.constraint = MatchConstraint::defaults(causal.lang_pair);
  if (!opt.match_lang.empty())
    mopt.constraint.match_lang = parse_lang_arg(opt.match_lang);
  if (opt.min_cosine >= 0.0) mopt.constraint.min_cosine = opt.min_cosine;
  if (opt.max_ratio >= 0.0) mopt.constraint.max_len_ratio = opt.max_ratio;
  if (opt.cap > 0) mopt.constraint.candidate_cap = opt.cap;
  mopt.greedy = opt.greedy;

  DenseEmbeddings dense;
  if (!opt.embeddings.empty()) {
    dense = load_embeddings(opt.embeddings);
    mopt.embeddings = &dense;
  }

  auto result = match_corpora(causal, anticausal, mopt);
  fs::path prefix(opt.out);
  if (prefix.has_parent_path()) fs::create_directories(prefix.parent_path());
  write_match_tsv(result, fs::path(opt.out + ".tsv"));
  write_corpus(result.matched_causal, opt.out + ".causal.jsonl");
  write_corpus(result.matched_anticausal, opt.out + ".anticausal.jsonl");

  std::cerr << "matched " << result.summary.cardinality << " of " << causal.pairs.size()
            << " causal / " << anticausal.pairs.size() << " anticausal pairs";
  if (result.summary.cardinality > 0)
    std::cerr << ", mean cosine " << result.summary.mean_cosine << ", mean length ratio "
              << result.summary.mean_len_ratio;
  std::cerr << '\n';
}

void run_manifests(const Options& opt) {
  if (opt.out.empty()) throw UsageError("manifests requires --out <dir>");
  auto [a, b] = parse_lang_pair_arg(opt.pair);
  SweepSpec spec;
  spec.pair = LangPair::of(a, b);
  spec.matched = opt.matched;
  spec.ssl = opt.ssl;
  spec.root = opt.root;
  if (!opt.alphas.empty()) {
    for (const auto& part : split_commas(opt.alphas)) {
      int v = -1;
      try {
        v = std::stoi(part);
      } catch (const std::exception&) {
        throw UsageError("bad alpha '" + part + "' in --alphas");
      }
      if (v < 0 || v > 100) throw UsageError("alpha " + part + " is outside 0..100");
      spec.alphas.push_back(v);
    }
  }
  auto manifests = plan_sweep(spec);
  emit_manifests(manifests, opt.out);
  std::cerr << "wrote " << manifests.size() << " manifests to " << opt.out << '\n';
}

std::set<std::string> known_ids_from(const std::string& manifest_dir) {
  std::set<std::string> ids;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(manifest_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) ids.insert(read_manifest(f.string()).experiment_id);
  return ids;
}

void run_ingest(const Options& opt) {
  IngestResult result;
  if (opt.manifests.empty()) {
    result = ingest_scores(fs::path(opt.scores));
  } else {
    auto known = known_ids_from(opt.manifests);
    result = ingest_scores(fs::path(opt.scores), &known);
  }
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  std::ostringstream out;
  write_scores(result.records, out);
  write_text(out.str(), opt.out);
}

RenderOptions render_options(const Options& opt) {
  RenderOptions r;
  r.format = parse_out_format(opt.format);
  r.strict = opt.strict;
  r.provenance = opt.provenance;
  r.ace_mode = opt.mean ? AceMode::mean : AceMode::sum;
  return r;
}

void run_ace(const Options& opt) {
  auto result = ingest_scores(fs::path(opt.scores));
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  write_text(render_ace_table(result.records, render_options(opt)), opt.out);
}

void run_report(const Options& opt) {
  auto result = ingest_scores(fs::path(opt.scores));
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  auto ropt = render_options(opt);
  std::string ext = ropt.format == OutFormat::json ? ".json" : ".tsv";

  if (opt.table == "mixture") {
    write_text(render_mixture_grid(result.records, ropt), opt.out);
  } else if (opt.table == "ssl") {
    write_text(render_ssl_table(result.records, ropt), opt.out);
  } else if (opt.table == "ace") {
    write_text(render_ace_table(result.records, ropt), opt.out);
  } else {
    if (opt.out.empty())
      throw UsageError("report --table all requires --out <dir>");
    fs::create_directories(opt.out);
    write_text(render_mixture_grid(result.records, ropt),
               (fs::path(opt.out) / ("mixture_grid" + ext)).string());
    write_text(render_ssl_table(result.records, ropt),
               (fs::path(opt.out) / ("ssl_table" + ext)).string());
    write_text(render_ace_table(result.records, ropt),
               (fs::path(opt.out) / ("ace_table" + ext)).string());
  }
}

}  // namespace

int cli_dispatch(std::vector<std::string> args) {
  Options opt;
  CLI::App app{"direction-labeled corpus tooling and causal-effect reports for MT", "causalmt"};
  app.require_subcommand(1);

  app.add_option("--seed", opt.seed, "random seed (default 42)");
  app.add_flag("--strict", opt.strict, "fail on missing report cells");
  app.add_flag("--provenance", opt.provenance, "add experiment-id provenance to reports");
  app.add_flag("--mean", opt.mean, "average the two per-half contrasts instead of summing");
  app.add_option("--format", opt.format, "output format for tables")
      ->check(CLI::IsMember({"tsv", "json"}));
  app.add_option("--out", opt.out, "output file, directory, or path prefix");

  void (*handler)(const Options&) = nullptr;
  auto bind = [&handler](void (*fn)(const Options&)) {
    return [&handler, fn]() { handler = fn; };
  };

  auto* extract = app.add_subcommand(
      "extract", "build direction-labeled corpora from session transcripts");
  extract->fallthrough();
  extract->add_option("--in", opt.in, "directory of transcript files")
      ->required()
      ->check(CLI::ExistingDirectory);
  extract->add_option("--langs", opt.langs, "two comma-separated language codes, e.g. de,en")
      ->required();
  extract->callback(bind(run_extract));

  auto* dedup_cmd = app.add_subcommand("dedup", "drop repeated pairs, keeping first");
  dedup_cmd->fallthrough();
  dedup_cmd->add_option("--in", opt.in, "corpus jsonl")->required()->check(CLI::ExistingFile);
  dedup_cmd->callback(bind(run_dedup));

  auto* split = app.add_subcommand("split", "carve dev and test sets out of a corpus");
  split->fallthrough();
  split->add_option("--in", opt.in, "corpus jsonl")->required()->check(CLI::ExistingFile);
  split->add_option("--dev", opt.dev_n, "dev set size")->required();
  split->add_option("--test", opt.test_n, "test set size")->required();
  split->callback(bind(run_split));

  auto* stats = app.add_subcommand("stats", "per-language corpus statistics table");
  stats->fallthrough();
  stats->add_option("--in", opt.ins, "corpus jsonl files")
      ->required()
      ->check(CLI::ExistingFile);
  stats->callback(bind(run_stats));

  auto* mix = app.add_subcommand("mix", "blend aligned and opposite-direction pairs");
  mix->fallthrough();
  mix->add_option("--aligned", opt.aligned, "corpus whose direction matches the task")
      ->required()
      ->check(CLI::ExistingFile);
  mix->add_option("--unaligned", opt.unaligned, "corpus with the opposite direction")
      ->required()
      ->check(CLI::ExistingFile);
  mix->add_option("--alpha", opt.alpha, "percent of pairs drawn from the aligned corpus")
      ->required()
      ->check(CLI::Range(0, 100));
  mix->add_option("--total", opt.total, "total pairs in the mixture")->required();
  mix->callback(bind(run_mix));

  auto* ssl_split = app.add_subcommand(
      "ssl-split", "halve two opposite corpora for semi-supervised training");
  ssl_split->fallthrough();
  ssl_split->add_option("--a", opt.corpus_a, "first corpus jsonl")
      ->required()
      ->check(CLI::ExistingFile);
  ssl_split->add_option("--b", opt.corpus_b, "opposite-direction corpus jsonl")
      ->required()
      ->check(CLI::ExistingFile);
  ssl_split->callback(bind(run_ssl_split));

  auto* pseudo = app.add_subcommand(
      "pseudo", "pair monolingual text with model translations");
  pseudo->fallthrough();
  pseudo->add_option("--mono-text", opt.mono_text, "monolingual text, one sample per line")
      ->required()
      ->check(CLI::ExistingFile);
  pseudo->add_option("--mono-ids", opt.mono_ids, "id sidecar for --mono-text")
      ->required()
      ->check(CLI::ExistingFile);
  pseudo->add_option("--translations", opt.translations,
                     "model output, line-aligned with --mono-text")
      ->required()
      ->check(CLI::ExistingFile);
  pseudo->add_option("--mono-lang", opt.mono_lang, "language of the monolingual text")
      ->required();
  pseudo->add_option("--target-lang", opt.target_lang, "language of the translations")
      ->required();
  pseudo->add_option("--method", opt.method, "self_training or back_translation")
      ->required();
  pseudo->add_option("--task", opt.task, "translation task the pairs will train, e.g. en-de")
      ->required();
  pseudo->callback(bind(run_pseudo));

  auto* embed = app.add_subcommand("embed", "validate an embedding file");
  embed->fallthrough();
  embed->add_option("--embeddings", opt.embeddings, "embedding file")
      ->required()
      ->check(CLI::ExistingFile);
  embed->add_option("--corpus", opt.corpus, "corpus whose pair ids must all be covered")
      ->check(CLI::ExistingFile);
  embed->callback(bind(run_embed));

  auto* match = app.add_subcommand(
      "match", "pair causal with anticausal samples of similar length and content");
  match->fallthrough();
  match->add_option("--causal", opt.causal, "corpus whose direction matches the task")
      ->required()
      ->check(CLI::ExistingFile);
  match->add_option("--anticausal", opt.anticausal, "opposite-direction corpus")
      ->required()
      ->check(CLI::ExistingFile);
  match->add_option("--embeddings", opt.embeddings, "dense embedding file (default: built-in)")
      ->check(CLI::ExistingFile);
  match->add_option("--match-lang", opt.match_lang, "language whose text is compared");
  match->add_option("--min-cosine", opt.min_cosine, "cosine similarity floor (default 0.7)");
  match->add_option("--max-ratio", opt.max_ratio, "length ratio ceiling (default 1.1)");
  match->add_option("--cap", opt.cap, "candidates kept per sample (default 64)");
  match->add_flag("--greedy", opt.greedy, "greedy matching instead of max-flow");
  match->callback(bind(run_match));

  auto* manifests = app.add_subcommand(
      "manifests", "plan a training sweep as manifest files");
  manifests->fallthrough();
  manifests->add_option("--pair", opt.pair, "two comma-separated language codes")
      ->required();
  manifests->add_option("--alphas", opt.alphas, "comma-separated mixture percentages");
  manifests->add_flag("--matched", opt.matched, "include matched-subset experiments");
  manifests->add_flag("--ssl", opt.ssl, "include semi-supervised experiments");
  manifests->add_option("--root", opt.root, "directory the manifests point into")
      ->required();
  manifests->callback(bind(run_manifests));

  auto* ingest = app.add_subcommand("ingest", "validate and normalize a score table");
  ingest->fallthrough();
  ingest->add_option("--scores", opt.scores, "score tsv")->required()->check(CLI::ExistingFile);
  ingest->add_option("--manifests", opt.manifests, "manifest dir for experiment-id checks")
      ->check(CLI::ExistingDirectory);
  ingest->callback(bind(run_ingest));

  auto* ace = app.add_subcommand("ace", "average causal effect table from scores");
  ace->fallthrough();
  ace->add_option("--scores", opt.scores, "score tsv")->required()->check(CLI::ExistingFile);
  ace->callback(bind(run_ace));

  auto* report = app.add_subcommand("report", "render score tables");
  report->fallthrough();
  report->add_option("--scores", opt.scores, "score tsv")->required()->check(CLI::ExistingFile);
  report->add_option("--table", opt.table, "mixture, ssl, ace, or all")
      ->check(CLI::IsMember({"mixture", "ssl", "ace", "all"}));
  report->callback(bind(run_report));

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (handler) handler(opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace causalmt
