#include "causalmt/match.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>

#include "causalmt/parallel.hpp"
#include "causalmt/stats.hpp"
#include "causalmt/text.hpp"

namespace causalmt {

LanguageCode choose_match_language(LangPair pair) {
  auto rank = [](LanguageCode l) -> int {
    if (l == kEn) return 0;
    if (l == kDe) return 1;
    if (l == kFr) return 2;
    if (l == kEs) return 3;
    throw Error("no match-language priority for '" + l.str() + "'; supported: en, de, fr, es");
  };
  return rank(pair.first) < rank(pair.second) ? pair.first : pair.second;
}

MatchConstraint MatchConstraint::defaults(LangPair pair) {
  MatchConstraint c;
  c.match_lang = choose_match_language(pair);
  return c;
}

namespace {

bool ratio_ok(std::size_t a, std::size_t b, double max_ratio) {
  if (a == 0 || b == 0) return false;
  double hi = static_cast<double>(std::max(a, b));
  double lo = static_cast<double>(std::min(a, b));
  return hi / lo <= max_ratio;
}

double len_ratio(std::size_t a, std::size_t b) {
  return static_cast<double>(std::max(a, b)) / static_cast<double>(std::min(a, b));
}

template <typename Vec, typename Cos>
std::vector<CandidateEdge> candidates_impl(const std::vector<Vec>& left,
                                           const std::vector<std::size_t>& left_lens,
                                           const std::vector<Vec>& right,
                                           const std::vector<std::size_t>& right_lens,
                                           const MatchConstraint& c, Cos cos, bool parallel) {
  if (left.size() != left_lens.size() || right.size() != right_lens.size())
    throw Error("candidate generation: vectors and lengths disagree in count");
  if (c.max_len_ratio < 1.0) throw Error("max_len_ratio must be at least 1");

  // Right items grouped by exact token count; map order keeps scans sorted.
  std::map<std::size_t, std::vector<std::uint32_t>> buckets;
  for (std::uint32_t j = 0; j < right.size(); ++j) buckets[right_lens[j]].push_back(j);

  std::vector<std::vector<CandidateEdge>> per_left(left.size());
  auto work = [&](std::size_t i) {
    std::size_t len_l = left_lens[i];
    if (len_l == 0) return;
    // Conservative integer window around len_l, exact check afterwards.
    auto lo_it = buckets.lower_bound(static_cast<std::size_t>(
        static_cast<double>(len_l) / c.max_len_ratio));
    std::size_t hi = static_cast<std::size_t>(static_cast<double>(len_l) * c.max_len_ratio) + 1;

    std::vector<CandidateEdge> scored;
    for (auto it = lo_it; it != buckets.end() && it->first <= hi; ++it) {
      if (!ratio_ok(len_l, it->first, c.max_len_ratio)) continue;
      for (std::uint32_t j : it->second)
        scored.push_back({static_cast<std::uint32_t>(i), j, cos(left[i], right[j]),
                          len_ratio(len_l, right_lens[j])});
    }
    std::sort(scored.begin(), scored.end(), [](const CandidateEdge& a, const CandidateEdge& b) {
      if (a.cosine != b.cosine) return a.cosine > b.cosine;
      return a.right < b.right;
    });
    if (scored.size() > c.candidate_cap) scored.resize(c.candidate_cap);
    for (const auto& e : scored)
      if (e.cosine > c.min_cosine && e.len_ratio <= c.max_len_ratio)
        per_left[i].push_back(e);
  };

  if (parallel) {
#ifdef _OPENMP
    int threads = effective_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(left.size()); ++i)
      work(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < left.size(); ++i) work(i);
  }

  std::vector<CandidateEdge> edges;
  for (auto& v : per_left) edges.insert(edges.end(), v.begin(), v.end());
  return edges;
}

double sparse_cos(const SparseVector& a, const SparseVector& b) { return cosine(a, b); }
double dense_cos(const std::vector<double>& a, const std::vector<double>& b) {
  return cosine(a, b);
}

}  // namespace

std::vector<CandidateEdge> generate_candidates_serial(const std::vector<SparseVector>& left,
                                                      const std::vector<std::size_t>& left_lens,
                                                      const std::vector<SparseVector>& right,
                                                      const std::vector<std::size_t>& right_lens,
                                                      const MatchConstraint& c) {
  return candidates_impl(left, left_lens, right, right_lens, c, sparse_cos, false);
}

std::vector<CandidateEdge> generate_candidates(const std::vector<SparseVector>& left,
                                               const std::vector<std::size_t>& left_lens,
                                               const std::vector<SparseVector>& right,
                                               const std::vector<std::size_t>& right_lens,
                                               const MatchConstraint& c) {
  return candidates_impl(left, left_lens, right, right_lens, c, sparse_cos, true);
}

std::vector<CandidateEdge> generate_candidates(const std::vector<std::vector<double>>& left,
                                               const std::vector<std::size_t>& left_lens,
                                               const std::vector<std::vector<double>>& right,
                                               const std::vector<std::size_t>& right_lens,
                                               const MatchConstraint& c) {
  return candidates_impl(left, left_lens, right, right_lens, c, dense_cos, true);
}

namespace {

// Unit-capacity Dinic specialization for bipartite graphs.
class DinicMatcher {
 public:
  DinicMatcher(const std::vector<CandidateEdge>& edges, std::size_t n_left,
               std::size_t n_right)
      : n_left_(n_left), n_right_(n_right), n_nodes_(n_left + n_right + 2) {
    source_ = static_cast<int>(n_left_ + n_right_);
    sink_ = source_ + 1;
    head_.assign(n_nodes_, -1);

    std::vector<CandidateEdge> sorted = edges;
    std::sort(sorted.begin(), sorted.end(),
              [](const CandidateEdge& a, const CandidateEdge& b) {
                if (a.left != b.left) return a.left < b.left;
                return a.right < b.right;
              });
    for (std::size_t i = 0; i < n_left_; ++i)
      add_edge(source_, static_cast<int>(i));
    for (const auto& e : sorted) {
      if (e.left >= n_left_ || e.right >= n_right_)
        throw Error("matching edge endpoint out of range");
      add_edge(static_cast<int>(e.left), static_cast<int>(n_left_ + e.right));
    }
    for (std::size_t j = 0; j < n_right_; ++j)
      add_edge(static_cast<int>(n_left_ + j), sink_);
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> solve() {
    while (bfs()) {
      iter_ = head_;
      while (dfs(source_)) {
      }
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::size_t i = 0; i < n_left_; ++i) {
      for (int e = head_[i]; e != -1; e = next_[e]) {
        int v = to_[e];
        if (v != source_ && cap_[e] == 0) {
          out.emplace_back(static_cast<std::uint32_t>(i),
                           static_cast<std::uint32_t>(v - static_cast<int>(n_left_)));
          break;
        }
      }
    }
    return out;
  }

 private:
  void add_edge(int u, int v) {
    to_.push_back(v);
    cap_.push_back(1);
    next_.push_back(head_[u]);
    head_[u] = static_cast<int>(to_.size()) - 1;
    to_.push_back(u);
    cap_.push_back(0);
    next_.push_back(head_[v]);
    head_[v] = static_cast<int>(to_.size()) - 1;
  }

  bool bfs() {
    level_.assign(n_nodes_, -1);
    std::vector<int> queue{source_};
    level_[source_] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      for (int e = head_[u]; e != -1; e = next_[e]) {
        if (cap_[e] > 0 && level_[to_[e]] == -1) {
          level_[to_[e]] = level_[u] + 1;
          queue.push_back(to_[e]);
        }
      }
    }
    return level_[sink_] != -1;
  }

  bool dfs(int u) {
    if (u == sink_) return true;
    for (int& e = iter_[u]; e != -1; e = next_[e]) {
      int v = to_[e];
      if (cap_[e] > 0 && level_[v] == level_[u] + 1 && dfs(v)) {
        cap_[e] -= 1;
        cap_[e ^ 1] += 1;
        return true;
      }
    }
    return false;
  }

  std::size_t n_left_, n_right_, n_nodes_;
  int source_, sink_;
  std::vector<int> head_, next_, to_, cap_, level_, iter_;
};

}  // namespace

std::vector<std::pair<std::uint32_t, std::uint32_t>> maximum_matching(
    const std::vector<CandidateEdge>& edges, std::size_t n_left, std::size_t n_right) {
  if (n_left == 0 || n_right == 0) return {};
  return DinicMatcher(edges, n_left, n_right).solve();
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> greedy_matching(
    const std::vector<CandidateEdge>& edges, std::size_t n_left, std::size_t n_right) {
  std::vector<std::vector<CandidateEdge>> by_left(n_left);
  for (const auto& e : edges) {
    if (e.left >= n_left || e.right >= n_right)
      throw Error("matching edge endpoint out of range");
    by_left[e.left].push_back(e);
  }
  std::vector<char> used(n_right, 0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::size_t i = 0; i < n_left; ++i) {
    auto& cands = by_left[i];
    std::sort(cands.begin(), cands.end(), [](const CandidateEdge& a, const CandidateEdge& b) {
      if (a.cosine != b.cosine) return a.cosine > b.cosine;
      return a.right < b.right;
    });
    for (const auto& e : cands) {
      if (!used[e.right]) {
        used[e.right] = 1;
        out.emplace_back(e.left, e.right);
        break;
      }
    }
  }
  return out;
}

namespace {

std::vector<std::vector<double>> dense_side(const DirectedCorpus& corpus,
                                            const DenseEmbeddings& emb) {
  std::vector<std::vector<double>> out;
  out.reserve(corpus.pairs.size());
  for (const auto& p : corpus.pairs) {
    auto it = emb.by_id.find(p.id);
    if (it == emb.by_id.end())
      throw Error("no embedding for pair id '" + p.id + "'");
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

MatchResult match_corpora(const DirectedCorpus& causal, const DirectedCorpus& anticausal,
                          const MatchOptions& opts) {
  if (causal.lang_pair != anticausal.lang_pair)
    throw Error("matching: language pairs differ (" + causal.lang_pair.str() + " vs " +
                anticausal.lang_pair.str() + ")");
  if (causal.direction != anticausal.direction.reversed())
    throw Error("matching: directions are not opposite (" + causal.direction.str() + " vs " +
                anticausal.direction.str() + ")");
  const MatchConstraint& c = opts.constraint;
  if (!causal.lang_pair.contains(c.match_lang))
    throw Error("match language '" + c.match_lang.str() + "' is not part of pair " +
                causal.lang_pair.str());

  std::vector<std::string> left_texts, right_texts;
  left_texts.reserve(causal.pairs.size());
  right_texts.reserve(anticausal.pairs.size());
  for (const auto& p : causal.pairs) left_texts.push_back(p.text_for(c.match_lang));
  for (const auto& p : anticausal.pairs) right_texts.push_back(p.text_for(c.match_lang));

  auto count_words = [&](const std::vector<std::string>& texts) {
    std::vector<std::size_t> lens(texts.size());
#ifdef _OPENMP
    int threads = effective_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(texts.size()); ++i) {
      std::size_t words = 0;
      for (const auto& t : tokenize(texts[i], c.match_lang))
        if (is_word_token(t)) ++words;
      lens[i] = words;
    }
    return lens;
  };
  std::vector<std::size_t> left_lens = count_words(left_texts);
  std::vector<std::size_t> right_lens = count_words(right_texts);

  std::vector<CandidateEdge> edges;
  if (opts.embeddings) {
    edges = generate_candidates(dense_side(causal, *opts.embeddings), left_lens,
                                dense_side(anticausal, *opts.embeddings), right_lens, c);
  } else {
    edges = generate_candidates(embed_all(left_texts, c.match_lang), left_lens,
                                embed_all(right_texts, c.match_lang), right_lens, c);
  }

  auto matching = opts.greedy ? greedy_matching(edges, causal.pairs.size(),
                                                anticausal.pairs.size())
                              : maximum_matching(edges, causal.pairs.size(),
                                                 anticausal.pairs.size());

  std::map<std::pair<std::uint32_t, std::uint32_t>, const CandidateEdge*> edge_index;
  for (const auto& e : edges) edge_index[{e.left, e.right}] = &e;

  MatchResult r;
  r.matched_causal.lang_pair = r.matched_anticausal.lang_pair = causal.lang_pair;
  r.matched_causal.direction = causal.direction;
  r.matched_anticausal.direction = anticausal.direction;
  r.matched_causal.split = causal.split;
  r.matched_anticausal.split = anticausal.split;

  double cos_sum = 0.0, ratio_sum = 0.0;
  for (const auto& [li, ri] : matching) {
    const CandidateEdge* e = edge_index.at({li, ri});
    r.pairs.push_back({causal.pairs[li].id, anticausal.pairs[ri].id, e->cosine, e->len_ratio});
    r.matched_causal.pairs.push_back(causal.pairs[li]);
    r.matched_anticausal.pairs.push_back(anticausal.pairs[ri]);
    cos_sum += e->cosine;
    ratio_sum += e->len_ratio;
  }
  r.summary.cardinality = r.pairs.size();
  if (!r.pairs.empty()) {
    r.summary.mean_cosine = cos_sum / static_cast<double>(r.pairs.size());
    r.summary.mean_len_ratio = ratio_sum / static_cast<double>(r.pairs.size());
  }
  return r;
}

MatchResult match_corpora(const DirectedCorpus& causal, const DirectedCorpus& anticausal) {
  MatchOptions opts;
  opts.constraint = MatchConstraint::defaults(causal.lang_pair);
  return match_corpora(causal, anticausal, opts);
}

void write_match_tsv(const MatchResult& result, std::ostream& out) {
  out << "causal_id\tanticausal_id\tcosine\tlen_ratio\n";
  char buf[64];
  for (const auto& p : result.pairs) {
    std::snprintf(buf, sizeof buf, "%.4f\t%.4f", p.cosine, p.len_ratio);
    out << p.causal_id << '\t' << p.anticausal_id << '\t' << buf << '\n';
  }
}

void write_match_tsv(const MatchResult& result, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  write_match_tsv(result, f);
  if (!f.good()) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace causalmt
