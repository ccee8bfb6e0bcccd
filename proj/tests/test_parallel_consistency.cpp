#include <cstdlib>
#include <string>
#include <vector>

#include "causalmt/embed.hpp"
#include "causalmt/match.hpp"
#include "causalmt/parallel.hpp"
#include "causalmt/rng.hpp"
#include "causalmt/stats.hpp"
#include "causalmt/types.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace causalmt;

namespace {

// Sets CAUSALMT_THREADS for the scope, restoring the old value after.
struct ThreadsEnv {
  std::string saved;
  bool had = false;

  explicit ThreadsEnv(const char* value) {
    if (const char* old = std::getenv("CAUSALMT_THREADS")) {
      saved = old;
      had = true;
    }
    ::setenv("CAUSALMT_THREADS", value, 1);
  }
  ~ThreadsEnv() {
    if (had)
      ::setenv("CAUSALMT_THREADS", saved.c_str(), 1);
    else
      ::unsetenv("CAUSALMT_THREADS");
  }
};

std::vector<std::string> workload_texts(std::size_t n) {
  const std::vector<std::string> words = {
      "report",  "committee", "budget", "vote",    "energy", "policy",
      "members", "debate",    "annual", "session", "was",    "adopted"};
  SplitMix64 rng(2024);
  std::vector<std::string> texts;
  texts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 37 == 0) {
      texts.emplace_back();  // empty samples must survive the kernels too
      continue;
    }
    std::size_t len = 1 + rng.below(14);
    std::string t;
    for (std::size_t k = 0; k < len; ++k) {
      if (k) t += ' ';
      t += words[rng.below(words.size())];
    }
    t += (i % 3 == 0) ? '.' : '!';
    texts.push_back(std::move(t));
  }
  return texts;
}

}  // namespace

TEST_CASE("effective_threads respects the env cap") {
  {
    ThreadsEnv env("1");
    CHECK(effective_threads() == 1);
  }
  {
    ThreadsEnv env("2");
    CHECK(effective_threads() >= 1);
    CHECK(effective_threads() <= 2);
  }
}

TEST_CASE("analysis and embedding kernels are thread-count invariant") {
  auto texts = workload_texts(400);

  std::vector<SampleBreakdown> breakdown1, breakdown4;
  std::vector<SparseVector> vecs1, vecs4;
  {
    ThreadsEnv env("1");
    breakdown1 = analyze_samples(texts, kEn);
    vecs1 = embed_all(texts, kEn);
  }
  {
    ThreadsEnv env("4");
    breakdown4 = analyze_samples(texts, kEn);
    vecs4 = embed_all(texts, kEn);
  }
  CHECK(breakdown1 == breakdown4);
  CHECK(vecs1 == vecs4);
  CHECK(breakdown1 == analyze_samples_serial(texts, kEn));
  CHECK(vecs1 == embed_all_serial(texts, kEn));
}

TEST_CASE("candidate generation is thread-count invariant") {
  auto left_texts = workload_texts(150);
  auto right_texts = workload_texts(151);
  right_texts.pop_back();

  auto lens_of = [](const std::vector<std::string>& texts) {
    std::vector<std::size_t> lens;
    lens.reserve(texts.size());
    for (const auto& t : texts) lens.push_back(analyze_sample(t, kEn).word_tokens);
    return lens;
  };

  MatchConstraint c = MatchConstraint::defaults(LangPair::of(kDe, kEn));
  c.min_cosine = 0.2;  // keep plenty of edges alive
  c.max_len_ratio = 1.5;

  std::vector<CandidateEdge> edges1, edges4;
  {
    ThreadsEnv env("1");
    auto left = embed_all(left_texts, kEn);
    auto right = embed_all(right_texts, kEn);
    edges1 = generate_candidates(left, lens_of(left_texts), right, lens_of(right_texts), c);
  }
  {
    ThreadsEnv env("4");
    auto left = embed_all(left_texts, kEn);
    auto right = embed_all(right_texts, kEn);
    edges4 = generate_candidates(left, lens_of(left_texts), right, lens_of(right_texts), c);
  }
  CHECK(!edges1.empty());
  CHECK(edges1 == edges4);
}

TEST_CASE("end-to-end matching is thread-count invariant") {
  auto causal = testutil::make_corpus({kDe, kEn}, 80, "c");
  auto anticausal = testutil::make_corpus({kEn, kDe}, 80, "a");

  MatchResult r1, r4;
  {
    ThreadsEnv env("1");
    r1 = match_corpora(causal, anticausal);
  }
  {
    ThreadsEnv env("4");
    r4 = match_corpora(causal, anticausal);
  }
  CHECK(r1.pairs == r4.pairs);
  CHECK(r1.matched_causal == r4.matched_causal);
  CHECK(r1.matched_anticausal == r4.matched_anticausal);
  CHECK(r1.summary.cardinality == r4.summary.cardinality);
  CHECK(r1.summary.mean_cosine == r4.summary.mean_cosine);
  CHECK(r1.summary.cardinality > 0);
}
