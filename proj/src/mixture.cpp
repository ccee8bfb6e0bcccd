#include "causalmt/mixture.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "causalmt/rng.hpp"
#include "causalmt/text.hpp"
#include "causalmt/unicode.hpp"

namespace causalmt {

using json = nlohmann::json;

namespace {

void require_opposite(const DirectedCorpus& a, const DirectedCorpus& b, const char* what) {
  if (a.lang_pair != b.lang_pair)
    throw Error(std::string(what) + ": language pairs differ (" + a.lang_pair.str() + " vs " +
                b.lang_pair.str() + ")");
  if (a.direction != b.direction.reversed())
    throw Error(std::string(what) + ": directions are not opposite (" + a.direction.str() +
                " vs " + b.direction.str() + ")");
}

std::string list_ids(const std::vector<std::string>& ids) {
  constexpr std::size_t kMax = 10;
  std::string s;
  for (std::size_t i = 0; i < ids.size() && i < kMax; ++i) {
    if (i) s += ", ";
    s += "'" + ids[i] + "'";
  }
  if (ids.size() > kMax) s += ", and " + std::to_string(ids.size() - kMax) + " more";
  return s;
}

}  // namespace

std::size_t aligned_quota(int alpha, std::size_t total) {
  if (alpha < 0 || alpha > 100)
    throw Error("alpha must be in [0,100], got " + std::to_string(alpha));
  return (static_cast<std::uint64_t>(alpha) * total + 50) / 100;
}

MixedCorpus make_mixture(const DirectedCorpus& aligned, const DirectedCorpus& unaligned,
                         const MixtureSpec& spec) {
  require_opposite(aligned, unaligned, "mixture");
  std::size_t n_a = aligned_quota(spec.alpha, spec.total_size);
  std::size_t n_u = spec.total_size - n_a;
  if (aligned.pairs.size() < n_a)
    throw Error("mixture needs " + std::to_string(n_a) + " pairs from the aligned corpus (" +
                aligned.direction.str() + ") but it has " +
                std::to_string(aligned.pairs.size()));
  if (unaligned.pairs.size() < n_u)
    throw Error("mixture needs " + std::to_string(n_u) + " pairs from the unaligned corpus (" +
                unaligned.direction.str() + ") but it has " +
                std::to_string(unaligned.pairs.size()));

  SplitMix64 root(spec.seed);
  SplitMix64 rng_a(root.next());
  SplitMix64 rng_u(root.next());
  SplitMix64 rng_s(root.next());

  MixedCorpus mix;
  mix.lang_pair = aligned.lang_pair;
  mix.spec = spec;
  mix.pairs.reserve(spec.total_size);
  for (auto i : sample_k_sorted(aligned.pairs.size(), n_a, rng_a))
    mix.pairs.push_back(aligned.pairs[i]);
  for (auto i : sample_k_sorted(unaligned.pairs.size(), n_u, rng_u))
    mix.pairs.push_back(unaligned.pairs[i]);
  shuffle(mix.pairs, rng_s);

  std::unordered_set<std::string> ids;
  ids.reserve(mix.pairs.size() * 2);
  for (const auto& p : mix.pairs)
    if (!ids.insert(p.id).second)
      throw Error("mixture sources share pair id '" + p.id + "'");
  return mix;
}

SslSplit halve_for_ssl(const DirectedCorpus& a, const DirectedCorpus& b, std::uint64_t seed) {
  require_opposite(a, b, "ssl split");
  if (a.pairs.empty() || b.pairs.empty()) throw Error("ssl split: empty corpus");

  SplitMix64 root(seed);
  SplitMix64 rng_a(root.next());
  SplitMix64 rng_b(root.next());

  auto halve = [](const DirectedCorpus& c, SplitMix64& rng, DirectedCorpus& h1,
                  DirectedCorpus& h2) {
    h1.lang_pair = h2.lang_pair = c.lang_pair;
    h1.direction = h2.direction = c.direction;
    h1.split = h2.split = c.split;
    std::size_t n1 = (c.pairs.size() + 1) / 2;
    auto picked = sample_k_sorted(c.pairs.size(), n1, rng);
    std::vector<char> in_h1(c.pairs.size(), 0);
    for (auto i : picked) in_h1[i] = 1;
    for (std::size_t i = 0; i < c.pairs.size(); ++i)
      (in_h1[i] ? h1 : h2).pairs.push_back(c.pairs[i]);
  };

  SslSplit s;
  halve(a, rng_a, s.a_half1, s.a_half2);
  halve(b, rng_b, s.b_half1, s.b_half2);
  return s;
}

std::vector<MonoRecord> extract_monolingual(const DirectedCorpus& half, LanguageCode lang) {
  if (!half.lang_pair.contains(lang))
    throw Error("language '" + lang.str() + "' is not part of corpus pair " +
                half.lang_pair.str());
  std::vector<MonoRecord> out;
  out.reserve(half.pairs.size());
  for (const auto& p : half.pairs)
    out.push_back({p.id, p.text_for(lang), p.direction});
  return out;
}

std::string pseudo_method_name(PseudoMethod m) {
  return m == PseudoMethod::self_training ? "self_training" : "back_translation";
}

PseudoMethod parse_pseudo_method(std::string_view name) {
  if (name == "self_training") return PseudoMethod::self_training;
  if (name == "back_translation") return PseudoMethod::back_translation;
  throw Error("invalid pseudo-parallel method '" + std::string(name) +
              "', expected self_training or back_translation");
}

std::vector<PseudoPair> build_pseudo_parallel(const std::vector<IdText>& mono,
                                              LanguageCode mono_lang,
                                              const std::vector<IdText>& translations,
                                              LanguageCode target_lang, PseudoMethod method,
                                              Direction task) {
  if (mono_lang == target_lang)
    throw Error("monolingual and translation languages must differ, both are '" +
                mono_lang.str() + "'");
  LangPair task_pair = LangPair::of(task);
  if (!task_pair.contains(mono_lang) || !task_pair.contains(target_lang))
    throw Error("languages " + mono_lang.str() + ", " + target_lang.str() +
                " do not form the task pair " + task_pair.str());
  if (method == PseudoMethod::self_training && mono_lang != task.origin)
    throw Error("self_training consumes monolingual text in the task's source language " +
                task.origin.str() + ", got " + mono_lang.str());
  if (method == PseudoMethod::back_translation && mono_lang != task.derived)
    throw Error("back_translation consumes monolingual text in the task's target language " +
                task.derived.str() + ", got " + mono_lang.str());

  std::unordered_map<std::string, const std::string*> by_id;
  by_id.reserve(translations.size() * 2);
  std::vector<std::string> duplicates;
  for (const auto& t : translations)
    if (!by_id.emplace(t.id, &t.text).second) duplicates.push_back(t.id);
  if (!duplicates.empty())
    throw Error("duplicate translation ids: " + list_ids(duplicates));

  std::vector<std::string> missing;
  for (const auto& m : mono)
    if (!by_id.count(m.id)) missing.push_back(m.id);
  if (!missing.empty())
    throw Error("translations missing for ids: " + list_ids(missing));

  std::vector<PseudoPair> out;
  out.reserve(mono.size());
  for (const auto& m : mono) {
    PseudoPair p;
    p.id = m.id;
    p.text[mono_lang] = m.text;
    p.text[target_lang] = *by_id.at(m.id);
    p.human_side = mono_lang;
    p.machine_side = target_lang;
    p.method = method;
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

constexpr std::string_view kMixtureFormat = "causalmt-mixture/1";
constexpr std::string_view kPseudoFormat = "causalmt-pseudo/1";

}  // namespace

void write_mixture(const MixedCorpus& mix, std::ostream& out) {
  json header{
      {"format", kMixtureFormat},
      {"lang_pair", {mix.lang_pair.first.str(), mix.lang_pair.second.str()}},
  };
  if (mix.spec) {
    header["alpha"] = mix.spec->alpha;
    header["total"] = mix.spec->total_size;
    header["seed"] = mix.spec->seed;
  }
  out << header.dump() << '\n';
  for (const auto& p : mix.pairs) {
    json line{{"id", p.id}};
    json text = json::object();
    for (const auto& [lang, t] : p.text) text[lang.str()] = t;
    line["text"] = std::move(text);
    line["direction"] = json{{"origin", p.direction.origin.str()},
                             {"derived", p.direction.derived.str()}};
    json meta = json::object();
    for (const auto& [k, v] : p.meta) meta[k] = v;
    line["meta"] = std::move(meta);
    out << line.dump() << '\n';
  }
}

void write_mixture(const MixedCorpus& mix, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  write_mixture(mix, f);
  if (!f.good()) throw Error("write failed for '" + path.string() + "'");
}

MixedCorpus read_mixture(std::istream& in, std::string_view source_name) {
  auto fail = [&](std::size_t line_no, const std::string& msg) -> Error {
    return Error(std::string(source_name) + ": line " + std::to_string(line_no) + ": " + msg);
  };

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw Error(std::string(source_name) + ": empty file");
  ++line_no;

  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception& e) {
    throw fail(line_no, std::string("malformed header: ") + e.what());
  }

  MixedCorpus mix;
  try {
    if (header.at("format").get<std::string>() != kMixtureFormat)
      throw Error("unsupported format '" + header.at("format").get<std::string>() + "'");
    const auto& lp = header.at("lang_pair");
    if (!lp.is_array() || lp.size() != 2) throw Error("lang_pair must list two languages");
    mix.lang_pair = LangPair::of(LanguageCode::parse(lp.at(0).get<std::string>()),
                                 LanguageCode::parse(lp.at(1).get<std::string>()));
    if (header.contains("alpha")) {
      MixtureSpec spec;
      spec.alpha = header.at("alpha").get<int>();
      spec.total_size = header.at("total").get<std::size_t>();
      spec.seed = header.at("seed").get<std::uint64_t>();
      if (spec.alpha < 0 || spec.alpha > 100)
        throw Error("alpha must be in [0,100], got " + std::to_string(spec.alpha));
      mix.spec = spec;
    }
  } catch (const json::exception& e) {
    throw fail(line_no, std::string("malformed header: ") + e.what());
  }

  std::unordered_set<std::string> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json row;
    try {
      row = json::parse(line);
    } catch (const json::exception& e) {
      throw fail(line_no, std::string("malformed pair line: ") + e.what());
    }
    DirectedPair p;
    try {
      p.id = row.at("id").get<std::string>();
      p.direction = Direction::make(
          LanguageCode::parse(row.at("direction").at("origin").get<std::string>()),
          LanguageCode::parse(row.at("direction").at("derived").get<std::string>()));
    } catch (const json::exception&) {
      throw fail(line_no, "pair line missing id or direction");
    }
    if (p.id.empty()) throw fail(line_no, "pair id is empty");
    if (!ids.insert(p.id).second) throw fail(line_no, "duplicate pair id '" + p.id + "'");
    if (LangPair::of(p.direction) != mix.lang_pair)
      throw Error("pair '" + p.id + "': direction " + p.direction.str() +
                  " outside corpus pair " + mix.lang_pair.str());
    if (!row.contains("text") || !row.at("text").is_object())
      throw Error("pair '" + p.id + "': missing text object");
    for (const auto& [k, v] : row.at("text").items()) {
      LanguageCode lc = LanguageCode::parse(k);
      if (!mix.lang_pair.contains(lc))
        throw Error("pair '" + p.id + "': language '" + k + "' outside pair " +
                    mix.lang_pair.str());
      if (!v.is_string()) throw Error("pair '" + p.id + "': " + k + " text must be a string");
      std::string t = uni::nfc(v.get<std::string>());
      if (normalize_ws(t).empty()) throw Error("pair '" + p.id + "': empty " + k + " text");
      p.text[lc] = std::move(t);
    }
    if (p.text.size() != 2)
      throw Error("pair '" + p.id + "': expected texts for exactly " + mix.lang_pair.str());
    if (row.contains("meta")) {
      if (!row.at("meta").is_object()) throw Error("pair '" + p.id + "': meta must be an object");
      for (const auto& [k, v] : row.at("meta").items()) {
        if (!v.is_string()) throw Error("pair '" + p.id + "': meta." + k + " must be a string");
        p.meta[k] = v.get<std::string>();
      }
    }
    mix.pairs.push_back(std::move(p));
  }
  return mix;
}

MixedCorpus read_mixture(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "'");
  return read_mixture(f, path.string());
}

void write_monolingual(const std::vector<MonoRecord>& records,
                       const std::filesystem::path& text_path,
                       const std::filesystem::path& ids_path) {
  std::ofstream tf(text_path, std::ios::binary);
  if (!tf) throw Error("cannot open '" + text_path.string() + "' for writing");
  std::ofstream idf(ids_path, std::ios::binary);
  if (!idf) throw Error("cannot open '" + ids_path.string() + "' for writing");
  for (const auto& r : records) {
    if (r.text.find('\n') != std::string::npos)
      throw Error("monolingual record '" + r.id + "' contains a newline");
    tf << r.text << '\n';
    idf << r.id << '\t' << r.direction.str() << '\n';
  }
  if (!tf.good()) throw Error("write failed for '" + text_path.string() + "'");
  if (!idf.good()) throw Error("write failed for '" + ids_path.string() + "'");
}

std::vector<MonoRecord> read_monolingual(const std::filesystem::path& text_path,
                                         const std::filesystem::path& ids_path) {
  std::ifstream tf(text_path, std::ios::binary);
  if (!tf) throw Error("cannot open '" + text_path.string() + "'");
  std::ifstream idf(ids_path, std::ios::binary);
  if (!idf) throw Error("cannot open '" + ids_path.string() + "'");

  std::vector<MonoRecord> out;
  std::string text_line, id_line;
  std::size_t line_no = 0;
  while (std::getline(tf, text_line)) {
    ++line_no;
    if (!std::getline(idf, id_line))
      throw Error(ids_path.string() + ": ends before line " + std::to_string(line_no) +
                  " of " + text_path.string());
    auto tab = id_line.find('\t');
    if (tab == std::string::npos || tab == 0)
      throw Error(ids_path.string() + ": line " + std::to_string(line_no) +
                  ": expected 'id<TAB>direction'");
    MonoRecord r;
    r.id = id_line.substr(0, tab);
    r.direction = Direction::parse(id_line.substr(tab + 1));
    r.text = uni::nfc(text_line);
    out.push_back(std::move(r));
  }
  if (std::getline(idf, id_line))
    throw Error(ids_path.string() + ": has more lines than " + text_path.string());
  return out;
}

void write_pseudo(const std::vector<PseudoPair>& pairs, std::ostream& out) {
  if (pairs.empty()) throw Error("refusing to write an empty pseudo-parallel corpus");
  const PseudoPair& head = pairs.front();
  if (head.human_side == head.machine_side)
    throw Error("pseudo-parallel human and machine sides must differ");
  json header{
      {"format", kPseudoFormat},
      {"human_side", head.human_side.str()},
      {"machine_side", head.machine_side.str()},
      {"method", pseudo_method_name(head.method)},
  };
  out << header.dump() << '\n';
  std::unordered_set<std::string> ids;
  for (const auto& p : pairs) {
    if (p.human_side != head.human_side || p.machine_side != head.machine_side ||
        p.method != head.method)
      throw Error("pseudo pair '" + p.id + "' disagrees with the corpus header");
    if (p.id.empty()) throw Error("pseudo pair with empty id");
    if (!ids.insert(p.id).second) throw Error("duplicate pseudo pair id '" + p.id + "'");
    if (p.text.size() != 2 || !p.text.count(p.human_side) || !p.text.count(p.machine_side))
      throw Error("pseudo pair '" + p.id + "' needs texts for exactly both sides");
    for (const auto& [lang, t] : p.text)
      if (normalize_ws(t).empty())
        throw Error("pseudo pair '" + p.id + "': empty " + lang.str() + " text");
    json line{{"id", p.id}};
    json text = json::object();
    for (const auto& [lang, t] : p.text) text[lang.str()] = t;
    line["text"] = std::move(text);
    out << line.dump() << '\n';
  }
}

void write_pseudo(const std::vector<PseudoPair>& pairs, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  write_pseudo(pairs, f);
  if (!f.good()) throw Error("write failed for '" + path.string() + "'");
}

std::vector<PseudoPair> read_pseudo(std::istream& in, std::string_view source_name) {
  auto fail = [&](std::size_t line_no, const std::string& msg) -> Error {
    return Error(std::string(source_name) + ": line " + std::to_string(line_no) + ": " + msg);
  };

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw Error(std::string(source_name) + ": empty file");
  ++line_no;

  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception& e) {
    throw fail(line_no, std::string("malformed header: ") + e.what());
  }

  LanguageCode human, machine;
  PseudoMethod method = PseudoMethod::self_training;
  try {
    if (header.at("format").get<std::string>() != kPseudoFormat)
      throw Error("unsupported format '" + header.at("format").get<std::string>() + "'");
    human = LanguageCode::parse(header.at("human_side").get<std::string>());
    machine = LanguageCode::parse(header.at("machine_side").get<std::string>());
    method = parse_pseudo_method(header.at("method").get<std::string>());
  } catch (const json::exception& e) {
    throw fail(line_no, std::string("malformed header: ") + e.what());
  }
  if (human == machine) throw fail(line_no, "human and machine sides are both " + human.str());

  std::vector<PseudoPair> pairs;
  std::unordered_set<std::string> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json row;
    try {
      row = json::parse(line);
    } catch (const json::exception& e) {
      throw fail(line_no, std::string("malformed pair line: ") + e.what());
    }
    PseudoPair p;
    p.human_side = human;
    p.machine_side = machine;
    p.method = method;
    try {
      p.id = row.at("id").get<std::string>();
    } catch (const json::exception&) {
      throw fail(line_no, "pair line missing string id");
    }
    if (p.id.empty()) throw fail(line_no, "pair id is empty");
    if (!ids.insert(p.id).second) throw fail(line_no, "duplicate pair id '" + p.id + "'");
    if (!row.contains("text") || !row.at("text").is_object())
      throw Error("pair '" + p.id + "': missing text object");
    for (const auto& [k, v] : row.at("text").items()) {
      LanguageCode lc = LanguageCode::parse(k);
      if (lc != human && lc != machine)
        throw Error("pair '" + p.id + "': language '" + k + "' outside corpus sides");
      if (!v.is_string()) throw Error("pair '" + p.id + "': " + k + " text must be a string");
      std::string t = uni::nfc(v.get<std::string>());
      if (normalize_ws(t).empty()) throw Error("pair '" + p.id + "': empty " + k + " text");
      p.text[lc] = std::move(t);
    }
    if (p.text.size() != 2)
      throw Error("pair '" + p.id + "': expected texts for both sides");
    pairs.push_back(std::move(p));
  }
  return pairs;
}

std::vector<PseudoPair> read_pseudo(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "'");
  return read_pseudo(f, path.string());
}

}  // namespace causalmt
