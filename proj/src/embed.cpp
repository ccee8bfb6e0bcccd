#include "causalmt/embed.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "causalmt/parallel.hpp"
#include "causalmt/text.hpp"
#include "causalmt/unicode.hpp"

namespace causalmt {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint32_t fold_dim(std::uint64_t h) {
  return static_cast<std::uint32_t>((h ^ (h >> 20) ^ (h >> 40)) & (kEmbedDims - 1));
}

SparseVector embed_builtin(std::string_view text, LanguageCode lang) {
  std::vector<std::string> words;
  for (auto& t : tokenize(text, lang))
    if (is_word_token(t)) words.push_back(uni::lower(t));

  std::unordered_map<std::uint32_t, std::uint32_t> tf;
  tf.reserve(words.size() * 4);
  for (const auto& w : words) ++tf[fold_dim(fnv1a64(w))];
  for (std::size_t i = 0; i + 1 < words.size(); ++i) {
    std::string bigram = words[i];
    bigram += '\x1f';
    bigram += words[i + 1];
    ++tf[fold_dim(fnv1a64(bigram))];
  }

  SparseVector v;
  v.entries.reserve(tf.size());
  for (const auto& [dim, count] : tf)
    v.entries.emplace_back(dim, std::log1p(static_cast<double>(count)));
  std::sort(v.entries.begin(), v.entries.end());

  double sq = 0.0;
  for (const auto& [dim, w] : v.entries) sq += w * w;
  if (sq > 0.0) {
    double norm = std::sqrt(sq);
    for (auto& [dim, w] : v.entries) w /= norm;
    v.norm = 1.0;
  }
  return v;
}

std::vector<SparseVector> embed_all_serial(const std::vector<std::string>& texts,
                                           LanguageCode lang) {
  std::vector<SparseVector> out(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) out[i] = embed_builtin(texts[i], lang);
  return out;
}

std::vector<SparseVector> embed_all(const std::vector<std::string>& texts, LanguageCode lang) {
  std::vector<SparseVector> out(texts.size());
#ifdef _OPENMP
  int threads = effective_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(texts.size()); ++i)
    out[i] = embed_builtin(texts[i], lang);
  return out;
}

double cosine(const SparseVector& a, const SparseVector& b) {
  if (!a.embeddable() || !b.embeddable()) return 0.0;
  double dot = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.entries.size() && j < b.entries.size()) {
    if (a.entries[i].first < b.entries[j].first) {
      ++i;
    } else if (a.entries[i].first > b.entries[j].first) {
      ++j;
    } else {
      dot += a.entries[i].second * b.entries[j].second;
      ++i;
      ++j;
    }
  }
  return dot / (a.norm * b.norm);
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    throw Error("cosine of vectors with different dimensions: " + std::to_string(a.size()) +
                " vs " + std::to_string(b.size()));
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return dot;
}

namespace {

constexpr std::string_view kEmbFormat = "causalmt-emb/1";

double parse_double(std::string_view s, const std::string& where) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(where + ": bad float '" + std::string(s) + "'");
  if (!std::isfinite(value))
    throw Error(where + ": non-finite value '" + std::string(s) + "'");
  return value;
}

}  // namespace

DenseEmbeddings load_embeddings(std::istream& in, std::string_view source_name) {
  auto where = [&](std::size_t line_no) {
    return std::string(source_name) + ": line " + std::to_string(line_no);
  };

  std::string line;
  if (!std::getline(in, line)) throw Error(std::string(source_name) + ": empty file");
  std::size_t line_no = 1;

  std::size_t dim = 0, count = 0;
  {
    std::istringstream hs(line);
    std::string magic, dim_kv, count_kv;
    hs >> magic >> dim_kv >> count_kv;
    if (magic != kEmbFormat || !dim_kv.starts_with("dim=") || !count_kv.starts_with("count="))
      throw Error(where(line_no) + ": expected header 'causalmt-emb/1 dim=<D> count=<N>'");
    try {
      dim = std::stoull(dim_kv.substr(4));
      count = std::stoull(count_kv.substr(6));
    } catch (const std::exception&) {
      throw Error(where(line_no) + ": bad dim or count in header");
    }
    if (dim == 0) throw Error(where(line_no) + ": dim must be positive");
  }

  DenseEmbeddings emb;
  emb.dim = dim;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0)
      throw Error(where(line_no) + ": expected 'id<TAB>floats'");
    std::string id = line.substr(0, tab);
    if (emb.by_id.count(id)) throw Error(where(line_no) + ": duplicate id '" + id + "'");

    std::vector<double> vec;
    vec.reserve(dim);
    std::size_t pos = tab + 1;
    while (pos < line.size()) {
      auto next = line.find(' ', pos);
      auto end = next == std::string::npos ? line.size() : next;
      if (end > pos) vec.push_back(parse_double({line.data() + pos, end - pos}, where(line_no)));
      pos = end + 1;
    }
    if (vec.size() != dim)
      throw Error(where(line_no) + ": vector for '" + id + "' has " +
                  std::to_string(vec.size()) + " values, header says " + std::to_string(dim));

    double sq = 0.0;
    for (double v : vec) sq += v * v;
    if (!(sq > 0.0))
      throw Error(where(line_no) + ": zero vector for '" + id + "' cannot be normalized");
    double norm = std::sqrt(sq);
    for (double& v : vec) v /= norm;
    emb.by_id.emplace(std::move(id), std::move(vec));
  }
  if (emb.by_id.size() != count)
    throw Error(std::string(source_name) + ": header says count=" + std::to_string(count) +
                " but file has " + std::to_string(emb.by_id.size()) + " records");
  return emb;
}

DenseEmbeddings load_embeddings(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "'");
  return load_embeddings(f, path.string());
}

void write_embeddings(const DenseEmbeddings& emb, std::ostream& out) {
  out << kEmbFormat << " dim=" << emb.dim << " count=" << emb.by_id.size() << '\n';
  char buf[64];
  for (const auto& [id, vec] : emb.by_id) {
    if (vec.size() != emb.dim)
      throw Error("vector for '" + id + "' has " + std::to_string(vec.size()) +
                  " values, expected " + std::to_string(emb.dim));
    out << id;
    char sep = '\t';
    for (double v : vec) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
      out << sep << std::string_view(buf, ptr - buf);
      sep = ' ';
    }
    out << '\n';
  }
}

void write_embeddings(const DenseEmbeddings& emb, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  write_embeddings(emb, f);
  if (!f.good()) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace causalmt
