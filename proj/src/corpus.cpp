#include "causalmt/corpus.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "causalmt/rng.hpp"
#include "causalmt/text.hpp"
#include "causalmt/unicode.hpp"

namespace causalmt {

using json = nlohmann::json;

Direction Direction::parse(std::string_view s) {
  auto sep = s.find("->");
  if (sep == std::string_view::npos)
    throw Error("invalid direction '" + std::string(s) + "', expected e.g. 'de->en'");
  return make(LanguageCode::parse(s.substr(0, sep)), LanguageCode::parse(s.substr(sep + 2)));
}

Direction Direction::parse_task(std::string_view s) {
  auto sep = s.find('-');
  if (sep == std::string_view::npos)
    throw Error("invalid task '" + std::string(s) + "', expected e.g. 'en-de'");
  return make(LanguageCode::parse(s.substr(0, sep)), LanguageCode::parse(s.substr(sep + 1)));
}

std::string_view split_name(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::dev: return "dev";
    case Split::test: return "test";
    default: return "unsplit";
  }
}

Split parse_split(std::string_view s) {
  if (s == "train") return Split::train;
  if (s == "dev") return Split::dev;
  if (s == "test") return Split::test;
  if (s == "unsplit") return Split::unsplit;
  throw Error("invalid split '" + std::string(s) + "'");
}

namespace {

std::string joint_key(const DirectedPair& p, LangPair lp) {
  std::string k = uni::nfc(normalize_ws(p.text_for(lp.first)));
  k += '\x1f';
  k += uni::nfc(normalize_ws(p.text_for(lp.second)));
  return k;
}

}  // namespace

DirectedCorpus dedup(const DirectedCorpus& c, std::size_t* n_removed) {
  DirectedCorpus out;
  out.lang_pair = c.lang_pair;
  out.direction = c.direction;
  out.split = c.split;
  out.pairs.reserve(c.pairs.size());
  std::unordered_set<std::string> seen;
  seen.reserve(c.pairs.size() * 2);
  for (const auto& p : c.pairs) {
    if (seen.insert(joint_key(p, c.lang_pair)).second) out.pairs.push_back(p);
  }
  if (n_removed) *n_removed = c.pairs.size() - out.pairs.size();
  return out;
}

void downsample_to_match(DirectedCorpus& a, DirectedCorpus& b, std::uint64_t seed) {
  if (a.lang_pair != b.lang_pair)
    throw Error("downsample: language pairs differ (" + a.lang_pair.str() + " vs " +
                b.lang_pair.str() + ")");
  if (a.direction != b.direction.reversed())
    throw Error("downsample: directions are not opposite (" + a.direction.str() + " vs " +
                b.direction.str() + ")");
  if (a.pairs.size() == b.pairs.size()) return;
  DirectedCorpus& larger = a.pairs.size() > b.pairs.size() ? a : b;
  std::size_t target = std::min(a.pairs.size(), b.pairs.size());
  SplitMix64 rng(seed);
  auto keep = sample_k_sorted(larger.pairs.size(), target, rng);
  std::vector<DirectedPair> kept;
  kept.reserve(target);
  for (auto i : keep) kept.push_back(std::move(larger.pairs[i]));
  larger.pairs = std::move(kept);
}

SplitResult split_train_dev_test(const DirectedCorpus& c, std::size_t dev_n,
                                 std::size_t test_n, std::uint64_t seed) {
  if (c.pairs.size() <= dev_n + test_n)
    throw Error("split: corpus has " + std::to_string(c.pairs.size()) +
                " pairs, need more than dev " + std::to_string(dev_n) + " + test " +
                std::to_string(test_n));
  SplitMix64 rng(seed);
  auto drawn = sample_k(c.pairs.size(), dev_n + test_n, rng);
  std::vector<std::size_t> dev_idx(drawn.begin(), drawn.begin() + dev_n);
  std::vector<std::size_t> test_idx(drawn.begin() + dev_n, drawn.end());
  std::sort(dev_idx.begin(), dev_idx.end());
  std::sort(test_idx.begin(), test_idx.end());

  std::vector<char> taken(c.pairs.size(), 0);
  for (auto i : dev_idx) taken[i] = 1;
  for (auto i : test_idx) taken[i] = 2;

  SplitResult r;
  for (auto* part : {&r.train, &r.dev, &r.test}) {
    part->lang_pair = c.lang_pair;
    part->direction = c.direction;
  }
  r.train.split = Split::train;
  r.dev.split = Split::dev;
  r.test.split = Split::test;
  for (auto i : dev_idx) r.dev.pairs.push_back(c.pairs[i]);
  for (auto i : test_idx) r.test.pairs.push_back(c.pairs[i]);
  for (std::size_t i = 0; i < c.pairs.size(); ++i)
    if (!taken[i]) r.train.pairs.push_back(c.pairs[i]);
  return r;
}

namespace {

constexpr std::string_view kCorpusFormat = "causalmt-corpus/1";

json direction_json(Direction d) {
  return json{{"origin", d.origin.str()}, {"derived", d.derived.str()}};
}

Direction direction_from_json(const json& j) {
  if (!j.is_object() || !j.contains("origin") || !j.contains("derived"))
    throw Error("direction must be an object with origin and derived");
  return Direction::make(LanguageCode::parse(j.at("origin").get<std::string>()),
                         LanguageCode::parse(j.at("derived").get<std::string>()));
}

}  // namespace

void write_corpus(const DirectedCorpus& c, std::ostream& out) {
  json header{
      {"format", kCorpusFormat},
      {"lang_pair", {c.lang_pair.first.str(), c.lang_pair.second.str()}},
      {"direction", direction_json(c.direction)},
      {"split", std::string(split_name(c.split))},
  };
  out << header.dump() << '\n';
  for (const auto& p : c.pairs) {
    json line{{"id", p.id}};
    json text = json::object();
    for (const auto& [lang, t] : p.text) text[lang.str()] = t;
    line["text"] = std::move(text);
    json meta = json::object();
    for (const auto& [k, v] : p.meta) meta[k] = v;
    line["meta"] = std::move(meta);
    out << line.dump() << '\n';
  }
}

void write_corpus(const DirectedCorpus& c, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  write_corpus(c, f);
  if (!f.good()) throw Error("write failed for '" + path.string() + "'");
}

DirectedCorpus read_corpus(std::istream& in, std::string_view source_name) {
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

  DirectedCorpus c;
  try {
    if (header.at("format").get<std::string>() != kCorpusFormat)
      throw Error("unsupported format '" + header.at("format").get<std::string>() + "'");
    const auto& lp = header.at("lang_pair");
    if (!lp.is_array() || lp.size() != 2) throw Error("lang_pair must list two languages");
    c.lang_pair = LangPair::of(LanguageCode::parse(lp.at(0).get<std::string>()),
                               LanguageCode::parse(lp.at(1).get<std::string>()));
    c.direction = direction_from_json(header.at("direction"));
    c.split = parse_split(header.at("split").get<std::string>());
  } catch (const json::exception& e) {
    throw fail(line_no, std::string("malformed header: ") + e.what());
  }
  if (!c.lang_pair.contains(c.direction.origin) || !c.lang_pair.contains(c.direction.derived))
    throw fail(line_no, "direction " + c.direction.str() + " not within pair " + c.lang_pair.str());

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
    p.direction = c.direction;
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
      if (!c.lang_pair.contains(lc))
        throw Error("pair '" + p.id + "': language '" + k + "' outside corpus direction " +
                    c.direction.str());
      if (!v.is_string()) throw Error("pair '" + p.id + "': " + k + " text must be a string");
      std::string t = uni::nfc(v.get<std::string>());
      if (normalize_ws(t).empty())
        throw Error("pair '" + p.id + "': empty " + k + " text");
      p.text[lc] = std::move(t);
    }
    if (p.text.size() != 2)
      throw Error("pair '" + p.id + "': expected texts for exactly " + c.lang_pair.str());
    if (row.contains("meta")) {
      if (!row.at("meta").is_object()) throw Error("pair '" + p.id + "': meta must be an object");
      for (const auto& [k, v] : row.at("meta").items()) {
        if (!v.is_string()) throw Error("pair '" + p.id + "': meta." + k + " must be a string");
        p.meta[k] = v.get<std::string>();
      }
    }
    c.pairs.push_back(std::move(p));
  }
  return c;
}

DirectedCorpus read_corpus(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "'");
  return read_corpus(f, path.string());
}

}  // namespace causalmt
