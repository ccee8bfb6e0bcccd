#include "causalmt/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "causalmt/stats.hpp"

namespace causalmt {

using json = nlohmann::json;

OutFormat parse_out_format(std::string_view s) {
  if (s == "tsv") return OutFormat::tsv;
  if (s == "json") return OutFormat::json;
  throw Error("invalid output format '" + std::string(s) + "', expected tsv or json");
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cols;
  std::size_t pos = 0;
  while (true) {
    auto tab = line.find('\t', pos);
    if (tab == std::string::npos) {
      cols.push_back(line.substr(pos));
      return cols;
    }
    cols.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

double parse_score(const std::string& s, const std::string& where) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(where + ": bad score value '" + s + "'");
  if (!std::isfinite(value)) throw Error(where + ": non-finite score value '" + s + "'");
  return value;
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fmt2_signed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%+.2f", v);
  return buf;
}

std::string fmt4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

double round2(double v) {
  double r = std::round(v * 100.0) / 100.0;
  return r == 0.0 ? 0.0 : r;
}

// Unlike find_cell this also hands back the record for provenance columns.
const ScoreRecord* find_record(const std::vector<ScoreRecord>& records, Direction task,
                               const TrainSpec& spec, bool t1) {
  const ScoreRecord* found = nullptr;
  for (const auto& r : records) {
    if (r.task != task || r.train_spec != spec || is_t1(r) != t1) continue;
    if (found)
      throw Error("duplicate score cell (" + task.task_str() + ", " + spec.str() + ", " +
                  (t1 ? "T1" : "T2") + ")");
    found = &r;
  }
  return found;
}

Error missing_cell(Direction task, const TrainSpec& spec, bool t1) {
  return Error("missing score cell (" + task.task_str() + ", " + spec.str() + ", " +
               (t1 ? "T1" : "T2") + ")");
}

}  // namespace

IngestResult ingest_scores(std::istream& in, std::string_view source_name,
                           const std::set<std::string>* known_ids) {
  IngestResult result;
  std::string line;
  std::size_t line_no = 0;
  std::set<std::string> warned_ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.starts_with("experiment_id\t")) continue;
    std::string where = std::string(source_name) + ": line " + std::to_string(line_no);

    auto cols = split_tabs(line);
    if (cols.size() != 6)
      throw Error(where + ": expected 6 tab-separated columns "
                          "(experiment_id, task, train_spec, test_half, metric_name, value), got " +
                  std::to_string(cols.size()));

    ScoreRecord r;
    r.experiment_id = cols[0];
    if (r.experiment_id.empty()) throw Error(where + ": empty experiment_id");
    try {
      r.task = Direction::parse_task(cols[1]);
      r.train_spec = TrainSpec::parse(cols[2]);
    } catch (const Error& e) {
      throw Error(where + ": " + e.what());
    }
    if (cols[3] == "T1") {
      r.test_half = r.task;
    } else if (cols[3] == "T2") {
      r.test_half = r.task.reversed();
    } else {
      throw Error(where + ": test_half must be T1 or T2, got '" + cols[3] + "'");
    }
    r.metric_name = cols[4];
    if (r.metric_name.empty()) throw Error(where + ": empty metric_name");
    r.value = parse_score(cols[5], where);

    if (known_ids && !known_ids->count(r.experiment_id) &&
        warned_ids.insert(r.experiment_id).second)
      result.warnings.push_back(where + ": unknown experiment_id '" + r.experiment_id + "'");
    result.records.push_back(std::move(r));
  }
  if (result.records.empty())
    result.warnings.push_back(std::string(source_name) + ": no score rows");
  return result;
}

IngestResult ingest_scores(const std::filesystem::path& path,
                           const std::set<std::string>* known_ids) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "'");
  return ingest_scores(f, path.string(), known_ids);
}

void write_scores(const std::vector<ScoreRecord>& records, std::ostream& out) {
  out << "experiment_id\ttask\ttrain_spec\ttest_half\tmetric_name\tvalue\n";
  char buf[64];
  for (const auto& r : records) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, r.value);
    out << r.experiment_id << '\t' << r.task.task_str() << '\t' << r.train_spec.str() << '\t'
        << half_label(r) << '\t' << r.metric_name << '\t'
        << std::string_view(buf, ptr - buf) << '\n';
  }
}

namespace {

struct Cell {
  std::optional<double> value;
  std::string experiment_id;
};

Cell cell_of(const std::vector<ScoreRecord>& records, Direction task, const TrainSpec& spec,
             bool t1, bool strict) {
  const ScoreRecord* r = find_record(records, task, spec, t1);
  if (!r) {
    if (strict) throw missing_cell(task, spec, t1);
    return {};
  }
  return {r->value, r->experiment_id};
}

json cell_json(const Cell& c, bool provenance) {
  if (!c.value) return nullptr;
  if (!provenance) return round2(*c.value);
  return json{{"value", round2(*c.value)}, {"experiment_id", c.experiment_id}};
}

std::string join_provenance(const std::vector<Cell>& cells) {
  std::string s;
  for (const auto& c : cells) {
    if (!c.value) continue;
    if (!s.empty()) s += ';';
    s += c.experiment_id;
  }
  return s.empty() ? "-" : s;
}

}  // namespace

std::string render_mixture_grid(const std::vector<ScoreRecord>& records,
                                const RenderOptions& opts) {
  std::vector<ScoreRecord> mix;
  for (const auto& r : records)
    if (r.train_spec.kind == TrainKind::mixture) mix.push_back(r);
  if (mix.empty() && opts.strict) throw Error("no mixture scores to render");

  std::vector<Direction> tasks = tasks_in_order(mix);
  std::set<int> alpha_set;
  for (const auto& r : mix) alpha_set.insert(r.train_spec.alpha);

  if (opts.format == OutFormat::json) {
    json out{{"report", "mixture_grid"}};
    json task_names = json::array();
    for (Direction t : tasks) task_names.push_back(t.task_str());
    out["tasks"] = std::move(task_names);
    json rows = json::array();
    for (int alpha : alpha_set) {
      json row{{"alpha", alpha}};
      json cells = json::object();
      for (Direction t : tasks) {
        TrainSpec spec = TrainSpec::mixture_of(alpha);
        cells[t.task_str()] =
            json{{"T1", cell_json(cell_of(mix, t, spec, true, opts.strict), opts.provenance)},
                 {"T2", cell_json(cell_of(mix, t, spec, false, opts.strict), opts.provenance)}};
      }
      row["cells"] = std::move(cells);
      rows.push_back(std::move(row));
    }
    out["rows"] = std::move(rows);
    return out.dump(2) + "\n";
  }

  std::string out = "alpha";
  for (Direction t : tasks) out += '\t' + t.task_str() + ":T1\t" + t.task_str() + ":T2";
  if (opts.provenance) out += "\tprovenance";
  out += '\n';
  for (int alpha : alpha_set) {
    out += std::to_string(alpha);
    std::vector<Cell> row_cells;
    for (Direction t : tasks) {
      TrainSpec spec = TrainSpec::mixture_of(alpha);
      for (bool t1 : {true, false}) {
        Cell c = cell_of(mix, t, spec, t1, opts.strict);
        out += '\t';
        out += c.value ? fmt2(*c.value) : "-";
        row_cells.push_back(std::move(c));
      }
    }
    if (opts.provenance) out += '\t' + join_provenance(row_cells);
    out += '\n';
  }
  return out;
}

std::string render_ssl_table(const std::vector<ScoreRecord>& records,
                             const RenderOptions& opts) {
  std::vector<ScoreRecord> ssl;
  for (const auto& r : records)
    if (r.train_spec.kind == TrainKind::supervised_equal_mix ||
        r.train_spec.kind == TrainKind::plus_st || r.train_spec.kind == TrainKind::plus_bt)
      ssl.push_back(r);
  if (ssl.empty() && opts.strict) throw Error("no semi-supervised scores to render");

  std::vector<Direction> tasks = tasks_in_order(ssl);

  struct Row {
    Direction task;
    std::string variant;
    Cell t1, t2;
    std::optional<double> delta_t1, delta_t2;
    std::string aligned = "-";
    std::string larger = "-";
  };
  std::vector<Row> rows;
  for (Direction task : tasks) {
    TrainSpec base_spec = TrainSpec::of(TrainKind::supervised_equal_mix);
    Row base{task, "baseline", cell_of(ssl, task, base_spec, true, opts.strict),
             cell_of(ssl, task, base_spec, false, opts.strict), {}, {}, "-", "-"};
    rows.push_back(base);
    for (TrainKind kind : {TrainKind::plus_st, TrainKind::plus_bt}) {
      bool any = false;
      for (const auto& r : ssl)
        if (r.task == task && r.train_spec.kind == kind) any = true;
      if (!any) continue;
      TrainSpec spec = TrainSpec::of(kind);
      Row row{task,
              spec.str(),
              cell_of(ssl, task, spec, true, opts.strict),
              cell_of(ssl, task, spec, false, opts.strict),
              {},
              {},
              kind == TrainKind::plus_st ? "T1" : "T2",
              "-"};
      if (row.t1.value && base.t1.value) row.delta_t1 = *row.t1.value - *base.t1.value;
      if (row.t2.value && base.t2.value) row.delta_t2 = *row.t2.value - *base.t2.value;
      if (row.delta_t1 && row.delta_t2)
        row.larger = *row.delta_t1 > *row.delta_t2
                         ? "T1"
                         : (*row.delta_t2 > *row.delta_t1 ? "T2" : "tie");
      rows.push_back(std::move(row));
    }
  }

  if (opts.format == OutFormat::json) {
    json out{{"report", "ssl_table"}};
    json jrows = json::array();
    for (const auto& r : rows) {
      json jr{{"task", r.task.task_str()}, {"variant", r.variant}};
      jr["t1"] = cell_json(r.t1, opts.provenance);
      jr["t2"] = cell_json(r.t2, opts.provenance);
      if (r.variant != "baseline") {
        jr["delta_t1"] = r.delta_t1 ? json(round2(*r.delta_t1)) : json(nullptr);
        jr["delta_t2"] = r.delta_t2 ? json(round2(*r.delta_t2)) : json(nullptr);
        jr["aligned_half"] = r.aligned;
        jr["larger_half"] = r.larger;
      }
      jrows.push_back(std::move(jr));
    }
    out["rows"] = std::move(jrows);
    return out.dump(2) + "\n";
  }

  std::string out =
      "task\tvariant\tt1\tt2\tdelta_t1\tdelta_t2\taligned_half\tlarger_half";
  if (opts.provenance) out += "\tprovenance";
  out += '\n';
  for (const auto& r : rows) {
    out += r.task.task_str() + '\t' + r.variant;
    out += '\t';
    out += r.t1.value ? fmt2(*r.t1.value) : "-";
    out += '\t';
    out += r.t2.value ? fmt2(*r.t2.value) : "-";
    out += '\t';
    out += r.delta_t1 ? fmt2_signed(*r.delta_t1) : "-";
    out += '\t';
    out += r.delta_t2 ? fmt2_signed(*r.delta_t2) : "-";
    out += '\t' + r.aligned + '\t' + r.larger;
    if (opts.provenance) out += '\t' + join_provenance({r.t1, r.t2});
    out += '\n';
  }
  return out;
}

std::string render_ace_table(const std::vector<ScoreRecord>& records,
                             const RenderOptions& opts) {
  std::vector<Direction> tasks;
  for (Direction t : tasks_in_order(records)) {
    bool has_matched = false;
    for (const auto& r : records)
      if (r.task == t && (r.train_spec.kind == TrainKind::matched_causal ||
                          r.train_spec.kind == TrainKind::matched_anticausal))
        has_matched = true;
    if (has_matched) tasks.push_back(t);
  }
  if (tasks.empty() && opts.strict) throw Error("no matched scores to render");

  const char* formula = opts.ace_mode == AceMode::sum ? "sum" : "mean";

  struct Row {
    Direction task;
    Cell c1, c2, a1, a2;                  // matched causal/anticausal cells
    std::vector<Cell> mix_cells;          // alpha 100/0 cells feeding diff
    std::optional<double> ace, diff;
  };
  std::vector<Row> rows;
  for (Direction task : tasks) {
    Row row;
    row.task = task;
    row.c1 = cell_of(records, task, TrainSpec::of(TrainKind::matched_causal), true, opts.strict);
    row.c2 = cell_of(records, task, TrainSpec::of(TrainKind::matched_causal), false, opts.strict);
    row.a1 = cell_of(records, task, TrainSpec::of(TrainKind::matched_anticausal), true,
                     opts.strict);
    row.a2 = cell_of(records, task, TrainSpec::of(TrainKind::matched_anticausal), false,
                     opts.strict);
    if (row.c1.value && row.c2.value && row.a1.value && row.a2.value) {
      double sum = (*row.c1.value + *row.c2.value) - (*row.a1.value + *row.a2.value);
      row.ace = opts.ace_mode == AceMode::sum ? sum : sum / 2.0;
    }
    row.mix_cells = {
        cell_of(records, task, TrainSpec::mixture_of(100), true, opts.strict),
        cell_of(records, task, TrainSpec::mixture_of(100), false, opts.strict),
        cell_of(records, task, TrainSpec::mixture_of(0), true, opts.strict),
        cell_of(records, task, TrainSpec::mixture_of(0), false, opts.strict),
    };
    bool all_mix = true;
    for (const auto& c : row.mix_cells)
      if (!c.value) all_mix = false;
    if (all_mix)
      row.diff = (*row.mix_cells[0].value + *row.mix_cells[1].value) -
                 (*row.mix_cells[2].value + *row.mix_cells[3].value);
    rows.push_back(std::move(row));
  }

  if (opts.format == OutFormat::json) {
    json out{{"report", "ace_table"}, {"mode", formula}};
    json jrows = json::array();
    for (const auto& r : rows) {
      json jr{{"task", r.task.task_str()}};
      jr["causal_t1"] = cell_json(r.c1, opts.provenance);
      jr["causal_t2"] = cell_json(r.c2, opts.provenance);
      jr["anticausal_t1"] = cell_json(r.a1, opts.provenance);
      jr["anticausal_t2"] = cell_json(r.a2, opts.provenance);
      jr["ace"] = r.ace ? json(round2(*r.ace)) : json(nullptr);
      jr["diff"] = r.diff ? json(round2(*r.diff)) : json(nullptr);
      jr["formula"] = formula;
      jrows.push_back(std::move(jr));
    }
    out["rows"] = std::move(jrows);
    return out.dump(2) + "\n";
  }

  std::string out =
      "task\tcausal_t1\tcausal_t2\tanticausal_t1\tanticausal_t2\tace\tdiff\tformula";
  if (opts.provenance) out += "\tprovenance";
  out += '\n';
  for (const auto& r : rows) {
    out += r.task.task_str();
    for (const Cell* c : {&r.c1, &r.c2, &r.a1, &r.a2}) {
      out += '\t';
      out += c->value ? fmt2(*c->value) : "-";
    }
    out += '\t';
    out += r.ace ? fmt2_signed(*r.ace) : "-";
    out += '\t';
    out += r.diff ? fmt2_signed(*r.diff) : "-";
    out += '\t';
    out += formula;
    if (opts.provenance) {
      std::vector<Cell> cells{r.c1, r.c2, r.a1, r.a2};
      cells.insert(cells.end(), r.mix_cells.begin(), r.mix_cells.end());
      out += '\t' + join_provenance(cells);
    }
    out += '\n';
  }
  return out;
}

std::string render_corpus_stats(
    const std::vector<std::pair<std::string, const DirectedCorpus*>>& corpora,
    OutFormat format) {
  struct Row {
    std::string corpus;
    SideStats side;
    double expansion;
    std::optional<ComplexityProfile> profile;
  };
  std::vector<Row> rows;
  for (const auto& [name, corpus] : corpora) {
    CorpusStats cs = corpus_stats(*corpus);
    for (LanguageCode lang : {corpus->lang_pair.first, corpus->lang_pair.second}) {
      Row row;
      row.corpus = name;
      row.side = cs.side.at(lang);
      double own = cs.side.at(lang).words_per_sample;
      double other = cs.side.at(corpus->lang_pair.other(lang)).words_per_sample;
      row.expansion = expansion_factor_from_means(own, other);
      try {
        row.profile = complexity_profile(*corpus, lang);
      } catch (const Error&) {
        row.profile = std::nullopt;  // no syllable rules for this language
      }
      rows.push_back(std::move(row));
    }
  }

  if (format == OutFormat::json) {
    json out{{"report", "corpus_stats"}};
    json jrows = json::array();
    for (const auto& r : rows) {
      json jr{{"corpus", r.corpus},
              {"lang", r.side.lang.str()},
              {"n_samples", r.side.n_samples},
              {"words_per_sample", r.side.words_per_sample},
              {"sents_per_sample", r.side.sents_per_sample},
              {"vocab_size", r.side.vocab_size},
              {"punct_per_sample", r.side.punct_per_sample},
              {"expansion_factor", r.expansion}};
      jr["passive_pct"] = r.side.passive_pct ? json(*r.side.passive_pct) : json(nullptr);
      if (r.profile) {
        jr["syllables_per_word"] = r.profile->syllables_per_word;
        jr["flesch"] = r.profile->flesch_reading_ease;
        jr["mattr"] = r.profile->mattr;
        jr["lexical_density"] = r.profile->lexical_density;
      } else {
        jr["syllables_per_word"] = nullptr;
        jr["flesch"] = nullptr;
        jr["mattr"] = nullptr;
        jr["lexical_density"] = nullptr;
      }
      jrows.push_back(std::move(jr));
    }
    out["rows"] = std::move(jrows);
    return out.dump(2) + "\n";
  }

  std::string out =
      "corpus\tlang\tn_samples\twords_per_sample\tsents_per_sample\tvocab_size"
      "\tpunct_per_sample\tpassive_pct\texpansion_factor\tsyllables_per_word"
      "\tflesch\tmattr\tlexical_density\n";
  for (const auto& r : rows) {
    out += r.corpus + '\t' + r.side.lang.str() + '\t' + std::to_string(r.side.n_samples);
    out += '\t' + fmt4(r.side.words_per_sample);
    out += '\t' + fmt4(r.side.sents_per_sample);
    out += '\t' + std::to_string(r.side.vocab_size);
    out += '\t' + fmt4(r.side.punct_per_sample);
    out += '\t';
    out += r.side.passive_pct ? fmt4(*r.side.passive_pct) : "-";
    out += '\t' + fmt4(r.expansion);
    if (r.profile) {
      out += '\t' + fmt4(r.profile->syllables_per_word);
      out += '\t' + fmt4(r.profile->flesch_reading_ease);
      out += '\t' + fmt4(r.profile->mattr);
      out += '\t' + fmt4(r.profile->lexical_density);
    } else {
      out += "\t-\t-\t-\t-";
    }
    out += '\n';
  }
  return out;
}

}  // namespace causalmt
