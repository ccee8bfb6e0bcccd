#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "causalmt/embed.hpp"
#include "causalmt/match.hpp"
#include "causalmt/rng.hpp"
#include "causalmt/types.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace causalmt;
using testutil::make_pair;

namespace {

const Direction kDeEn = Direction::make(kDe, kEn);
const Direction kEnDe = Direction::make(kEn, kDe);

double oracle_ratio(std::size_t a, std::size_t b) {
  return static_cast<double>(std::max(a, b)) / static_cast<double>(std::min(a, b));
}

// All-pairs restatement of the candidate contract: rank by cosine then right
// index, truncate to the cap, then apply the strict cosine and ratio checks.
std::vector<CandidateEdge> oracle_candidates(const std::vector<SparseVector>& left,
                                             const std::vector<std::size_t>& left_lens,
                                             const std::vector<SparseVector>& right,
                                             const std::vector<std::size_t>& right_lens,
                                             const MatchConstraint& c) {
  std::vector<CandidateEdge> out;
  for (std::uint32_t i = 0; i < left.size(); ++i) {
    if (left_lens[i] == 0) continue;
    std::vector<CandidateEdge> scored;
    for (std::uint32_t j = 0; j < right.size(); ++j) {
      if (right_lens[j] == 0) continue;
      if (oracle_ratio(left_lens[i], right_lens[j]) > c.max_len_ratio) continue;
      scored.push_back(
          {i, j, cosine(left[i], right[j]), oracle_ratio(left_lens[i], right_lens[j])});
    }
    std::sort(scored.begin(), scored.end(), [](const CandidateEdge& a, const CandidateEdge& b) {
      if (a.cosine != b.cosine) return a.cosine > b.cosine;
      return a.right < b.right;
    });
    if (scored.size() > c.candidate_cap) scored.resize(c.candidate_cap);
    for (const auto& e : scored)
      if (e.cosine > c.min_cosine && e.len_ratio <= c.max_len_ratio) out.push_back(e);
  }
  return out;
}

std::size_t brute_max_matching(const std::vector<CandidateEdge>& edges, std::size_t n_left,
                               std::size_t n_right) {
  REQUIRE(n_right <= 12);
  std::vector<std::uint32_t> adj(n_left, 0);
  for (const auto& e : edges) adj[e.left] |= 1u << e.right;
  std::uint32_t n_masks = 1u << n_right;
  std::vector<int> next_row(n_masks, 0), row(n_masks, 0);
  for (std::size_t i = n_left; i-- > 0;) {
    for (std::uint32_t mask = 0; mask < n_masks; ++mask) {
      int best = next_row[mask];
      std::uint32_t avail = adj[i] & ~mask;
      while (avail) {
        std::uint32_t bit = avail & (~avail + 1);
        best = std::max(best, 1 + next_row[mask | bit]);
        avail ^= bit;
      }
      row[mask] = best;
    }
    std::swap(row, next_row);
  }
  return static_cast<std::size_t>(next_row[0]);
}

bool kuhn_try(std::size_t u, const std::vector<std::vector<std::uint32_t>>& adj,
              std::vector<int>& match_r, std::vector<char>& seen) {
  for (auto v : adj[u]) {
    if (seen[v]) continue;
    seen[v] = 1;
    if (match_r[v] < 0 ||
        kuhn_try(static_cast<std::size_t>(match_r[v]), adj, match_r, seen)) {
      match_r[v] = static_cast<int>(u);
      return true;
    }
  }
  return false;
}

std::size_t kuhn_matching(const std::vector<CandidateEdge>& edges, std::size_t n_left,
                          std::size_t n_right) {
  std::vector<std::vector<std::uint32_t>> adj(n_left);
  for (const auto& e : edges) adj[e.left].push_back(e.right);
  std::vector<int> match_r(n_right, -1);
  std::size_t total = 0;
  for (std::size_t u = 0; u < n_left; ++u) {
    std::vector<char> seen(n_right, 0);
    if (kuhn_try(u, adj, match_r, seen)) ++total;
  }
  return total;
}

void check_valid_matching(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& m,
                          const std::vector<CandidateEdge>& edges) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> edge_set;
  for (const auto& e : edges) edge_set.insert({e.left, e.right});
  std::set<std::uint32_t> ls, rs;
  for (const auto& [l, r] : m) {
    CHECK(edge_set.count({l, r}) == 1);
    CHECK(ls.insert(l).second);
    CHECK(rs.insert(r).second);
  }
}

const std::vector<std::string> kPool = {"vote",   "report", "debate",  "policy", "budget",
                                        "market", "energy", "fisheries", "union", "council",
                                        "health", "safety", "water",   "trade",  "growth"};

std::string random_text(SplitMix64& rng, std::size_t n_words) {
  std::string text;
  for (std::size_t i = 0; i < n_words; ++i) {
    if (i) text += ' ';
    text += kPool[rng.below(kPool.size())];
  }
  return text;
}

}  // namespace

TEST_CASE("match language follows the fixed priority") {
  CHECK(choose_match_language(LangPair::of(kDe, kEn)) == kEn);
  CHECK(choose_match_language(LangPair::of(kEn, kFr)) == kEn);
  CHECK(choose_match_language(LangPair::of(kEn, kEs)) == kEn);
  CHECK(choose_match_language(LangPair::of(kDe, kFr)) == kDe);
  CHECK(choose_match_language(LangPair::of(kDe, kEs)) == kDe);
  CHECK(choose_match_language(LangPair::of(kEs, kFr)) == kFr);
  CHECK_THROWS_AS(choose_match_language(LangPair::of(LanguageCode::parse("fi"), kEn)), Error);
  MatchConstraint d = MatchConstraint::defaults(LangPair::of(kEs, kFr));
  CHECK(d.match_lang == kFr);
  CHECK(d.max_len_ratio == 1.1);
  CHECK(d.min_cosine == 0.7);
  CHECK(d.candidate_cap == 64);
}

TEST_CASE("candidate generation matches the all-pairs restatement") {
  SplitMix64 rng(2024);
  const double ratios[] = {1.0, 1.1, 1.5, 2.0};
  const double mins[] = {0.0, 0.3, 0.7};
  const std::size_t caps[] = {1, 2, 5, 64};
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n_left = rng.below(15), n_right = rng.below(15);
    std::vector<std::string> lt, rt;
    std::vector<std::size_t> ll, rl;
    for (std::size_t i = 0; i < n_left; ++i) {
      std::size_t w = rng.below(9);  // zero-length sides stay candidate-free
      lt.push_back(random_text(rng, w));
      ll.push_back(w);
    }
    for (std::size_t j = 0; j < n_right; ++j) {
      std::size_t w = rng.below(9);
      rt.push_back(random_text(rng, w));
      rl.push_back(w);
    }
    MatchConstraint c;
    c.match_lang = kEn;
    c.max_len_ratio = ratios[rng.below(4)];
    c.min_cosine = mins[rng.below(3)];
    c.candidate_cap = caps[rng.below(4)];

    auto lv = embed_all_serial(lt, kEn);
    auto rv = embed_all_serial(rt, kEn);
    auto expect = oracle_candidates(lv, ll, rv, rl, c);
    auto serial = generate_candidates_serial(lv, ll, rv, rl, c);
    CHECK(serial == expect);
    auto parallel = generate_candidates(lv, ll, rv, rl, c);
    CHECK(parallel == expect);
  }
}

TEST_CASE("candidate generation boundary behaviour") {
  // ratio exactly at the bound is kept, cosine exactly at the bound is not
  auto same = embed_all_serial({"energy policy report", "energy policy report"}, kEn);
  MatchConstraint c;
  c.match_lang = kEn;

  SUBCASE("len ratio 11/10 passes a 1.1 bound") {
    auto e = generate_candidates_serial({same[0]}, {11}, {same[1]}, {10}, c);
    REQUIRE(e.size() == 1);
    CHECK(e[0].len_ratio == 1.1);
  }
  SUBCASE("len ratio 12/10 fails a 1.1 bound") {
    auto e = generate_candidates_serial({same[0]}, {12}, {same[1]}, {10}, c);
    CHECK(e.empty());
  }
  SUBCASE("cosine must strictly exceed the threshold") {
    auto a = embed_builtin("vote report", kEn);
    auto b = embed_builtin("vote debate", kEn);
    double cs = cosine(a, b);
    MatchConstraint tight = c;
    tight.min_cosine = cs;
    CHECK(generate_candidates_serial({a}, {2}, {b}, {2}, tight).empty());
    tight.min_cosine = std::nextafter(cs, 0.0);
    CHECK(generate_candidates_serial({a}, {2}, {b}, {2}, tight).size() == 1);
  }
  SUBCASE("zero-length sides never pair") {
    auto e = generate_candidates_serial({same[0]}, {0}, {same[1]}, {0}, c);
    CHECK(e.empty());
  }
  SUBCASE("input validation") {
    CHECK_THROWS_AS(generate_candidates_serial({same[0]}, {1, 2}, {same[1]}, {1}, c), Error);
    MatchConstraint bad = c;
    bad.max_len_ratio = 0.9;
    CHECK_THROWS_AS(generate_candidates_serial({same[0]}, {1}, {same[1]}, {1}, bad), Error);
  }
}

TEST_CASE("candidate cap keeps the top-ranked rights") {
  // one left, three rights of equal length with strictly ordered cosines
  auto l = embed_builtin("vote report debate", kEn);
  auto r1 = embed_builtin("vote report debate", kEn);   // identical
  auto r2 = embed_builtin("vote report policy", kEn);   // two of three words
  auto r3 = embed_builtin("vote budget policy", kEn);   // one of three
  MatchConstraint c;
  c.match_lang = kEn;
  c.min_cosine = 0.0;
  c.max_len_ratio = 1.0;
  c.candidate_cap = 2;
  auto e = generate_candidates_serial({l}, {3}, {r1, r2, r3}, {3, 3, 3}, c);
  REQUIRE(e.size() == 2);
  CHECK(e[0].right == 0);
  CHECK(e[1].right == 1);
  CHECK(e[0].cosine > e[1].cosine);
}

TEST_CASE("maximum matching agrees with exhaustive search and augmenting paths") {
  SplitMix64 rng(555);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t n_left = 1 + rng.below(12);
    std::size_t n_right = 1 + rng.below(trial % 5 == 0 ? 12 : 10);
    std::uint64_t density = 1 + rng.below(60);
    std::vector<CandidateEdge> edges;
    for (std::uint32_t i = 0; i < n_left; ++i)
      for (std::uint32_t j = 0; j < n_right; ++j)
        if (rng.below(100) < density) edges.push_back({i, j, 0.9, 1.0});
    auto m = maximum_matching(edges, n_left, n_right);
    check_valid_matching(m, edges);
    std::size_t brute = brute_max_matching(edges, n_left, n_right);
    CHECK(m.size() == brute);
    CHECK(kuhn_matching(edges, n_left, n_right) == brute);
  }
}

TEST_CASE("maximum matching recovers a planted perfect matching at 30x30") {
  SplitMix64 rng(30);
  std::vector<std::uint32_t> perm(30);
  for (std::uint32_t j = 0; j < 30; ++j) perm[j] = j;
  std::vector<std::uint32_t> tmp(perm);
  shuffle(tmp, rng);
  perm = tmp;

  std::vector<CandidateEdge> edges;
  for (std::uint32_t i = 0; i < 30; ++i) edges.push_back({i, perm[i], 0.95, 1.0});
  for (int extra = 0; extra < 120; ++extra) {
    std::uint32_t i = static_cast<std::uint32_t>(rng.below(30));
    std::uint32_t j = static_cast<std::uint32_t>(rng.below(30));
    edges.push_back({i, j, 0.8, 1.05});
  }
  auto m = maximum_matching(edges, 30, 30);
  CHECK(m.size() == 30);
  check_valid_matching(m, edges);
}

TEST_CASE("matching output ignores edge insertion order") {
  SplitMix64 rng(808);
  std::vector<CandidateEdge> edges;
  for (std::uint32_t i = 0; i < 10; ++i)
    for (std::uint32_t j = 0; j < 10; ++j)
      if (rng.below(100) < 40) edges.push_back({i, j, 0.75, 1.0});
  auto base = maximum_matching(edges, 10, 10);
  auto base_greedy = greedy_matching(edges, 10, 10);
  for (int trial = 0; trial < 20; ++trial) {
    auto shuffled = edges;
    SplitMix64 r2(trial);
    shuffle(shuffled, r2);
    CHECK(maximum_matching(shuffled, 10, 10) == base);
    CHECK(greedy_matching(shuffled, 10, 10) == base_greedy);
  }
}

TEST_CASE("greedy matching can fall short of the optimum") {
  std::vector<CandidateEdge> edges = {
      {0, 0, 0.9, 1.0}, {0, 1, 0.5, 1.0}, {1, 0, 0.8, 1.0}};
  auto greedy = greedy_matching(edges, 2, 2);
  REQUIRE(greedy.size() == 1);
  CHECK(greedy[0] == std::pair<std::uint32_t, std::uint32_t>{0, 0});
  auto optimal = maximum_matching(edges, 2, 2);
  CHECK(optimal.size() == 2);
}

TEST_CASE("corpus matching pairs similar sentences across directions") {
  DirectedCorpus causal;
  causal.direction = kDeEn;
  causal.lang_pair = LangPair::of(kDe, kEn);
  causal.pairs.push_back(make_pair("c1", "Platzhalter eins.",
                                   "this committee approved our annual budget report", kDeEn));
  causal.pairs.push_back(
      make_pair("c2", "Platzhalter zwei.", "members debated energy policy yesterday evening",
                kDeEn));

  DirectedCorpus anticausal;
  anticausal.direction = kEnDe;
  anticausal.lang_pair = LangPair::of(kDe, kEn);
  anticausal.pairs.push_back(
      make_pair("a1", "Platzhalter drei.", "completely unrelated words about xylophones here",
                kEnDe));
  anticausal.pairs.push_back(
      make_pair("a2", "Platzhalter vier.", "members debated transport policy yesterday evening",
                kEnDe));
  anticausal.pairs.push_back(make_pair(
      "a3", "Platzhalter fünf.", "this committee approved our annual fishing report", kEnDe));

  MatchResult r = match_corpora(causal, anticausal);
  REQUIRE(r.pairs.size() == 2);
  CHECK(r.summary.cardinality == 2);
  std::map<std::string, std::string> got;
  for (const auto& p : r.pairs) got[p.causal_id] = p.anticausal_id;
  CHECK(got.at("c1") == "a3");
  CHECK(got.at("c2") == "a2");

  double cos_sum = 0.0, ratio_sum = 0.0;
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    const auto& p = r.pairs[i];
    CHECK(p.cosine > 0.7);
    CHECK(p.len_ratio <= 1.1);
    cos_sum += p.cosine;
    ratio_sum += p.len_ratio;
    CHECK(r.matched_causal.pairs[i].id == p.causal_id);
    CHECK(r.matched_anticausal.pairs[i].id == p.anticausal_id);
  }
  CHECK(r.summary.mean_cosine == doctest::Approx(cos_sum / 2));
  CHECK(r.summary.mean_len_ratio == doctest::Approx(ratio_sum / 2));
  CHECK(r.matched_causal.direction == kDeEn);
  CHECK(r.matched_anticausal.direction == kEnDe);
}

TEST_CASE("corpus matching validates directions and languages") {
  DirectedCorpus a, b;
  a.direction = kDeEn;
  a.lang_pair = LangPair::of(kDe, kEn);
  b = a;  // same direction, not opposite
  CHECK_THROWS_AS(match_corpora(a, b), Error);

  DirectedCorpus fr;
  fr.direction = Direction::make(kFr, kEn);
  fr.lang_pair = LangPair::of(kEn, kFr);
  CHECK_THROWS_AS(match_corpora(a, fr), Error);

  DirectedCorpus anti = a;
  anti.direction = kEnDe;
  MatchOptions opts;
  opts.constraint = MatchConstraint::defaults(a.lang_pair);
  opts.constraint.match_lang = kFr;
  CHECK_THROWS_AS(match_corpora(a, anti, opts), Error);
}

TEST_CASE("corpus matching can use supplied dense vectors") {
  DirectedCorpus causal;
  causal.direction = kDeEn;
  causal.lang_pair = LangPair::of(kDe, kEn);
  causal.pairs.push_back(make_pair("c1", "Eins.", "one two three", kDeEn));
  causal.pairs.push_back(make_pair("c2", "Zwei.", "four five six", kDeEn));
  DirectedCorpus anticausal;
  anticausal.direction = kEnDe;
  anticausal.lang_pair = LangPair::of(kDe, kEn);
  anticausal.pairs.push_back(make_pair("a1", "Drei.", "seven eight nine", kEnDe));
  anticausal.pairs.push_back(make_pair("a2", "Vier.", "ten eleven twelve", kEnDe));

  DenseEmbeddings emb;
  emb.dim = 2;
  emb.by_id["c1"] = {1.0, 0.0};
  emb.by_id["c2"] = {0.0, 1.0};
  emb.by_id["a1"] = {0.0, 1.0};
  emb.by_id["a2"] = {1.0, 0.0};

  MatchOptions opts;
  opts.constraint = MatchConstraint::defaults(causal.lang_pair);
  opts.embeddings = &emb;
  MatchResult r = match_corpora(causal, anticausal, opts);
  REQUIRE(r.pairs.size() == 2);
  std::map<std::string, std::string> got;
  for (const auto& p : r.pairs) got[p.causal_id] = p.anticausal_id;
  CHECK(got.at("c1") == "a2");
  CHECK(got.at("c2") == "a1");

  emb.by_id.erase("a2");
  CHECK_THROWS_WITH_AS(match_corpora(causal, anticausal, opts),
                       doctest::Contains("no embedding"), Error);
}

TEST_CASE("match table renders four fixed-precision columns") {
  MatchResult r;
  r.pairs.push_back({"c1", "a1", 0.75, 1.0});
  r.pairs.push_back({"c2", "a2", 0.8321, 1.1});
  std::ostringstream out;
  write_match_tsv(r, out);
  CHECK(out.str() ==
        "causal_id\tanticausal_id\tcosine\tlen_ratio\n"
        "c1\ta1\t0.7500\t1.0000\n"
        "c2\ta2\t0.8321\t1.1000\n");
}
