// Times the OpenMP kernels against their serial twins on synthetic text.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "causalmt/embed.hpp"
#include "causalmt/match.hpp"
#include "causalmt/rng.hpp"
#include "causalmt/stats.hpp"
#include "causalmt/types.hpp"

using namespace causalmt;

namespace {

const char* kWords[] = {
    "committee", "report",   "market",  "policy",  "union",    "member",
    "state",     "debate",   "vote",    "council", "proposal", "budget",
    "directive", "citizens", "energy",  "safety",  "reform",   "growth",
    "region",    "support",  "program", "review",  "trade",    "border",
    "council",   "farming",  "health",  "water",   "justice",  "freedom"};

std::string synth_sentence(SplitMix64& rng, std::size_t words) {
  std::string s;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) s += ' ';
    s += kWords[rng.below(std::size(kWords))];
  }
  s += '.';
  return s;
}

std::vector<std::string> synth_texts(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::string> texts;
  texts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string t = synth_sentence(rng, 8 + rng.below(18));
    if (rng.below(2)) t += " " + synth_sentence(rng, 6 + rng.below(12));
    texts.push_back(std::move(t));
  }
  return texts;
}

template <typename F>
double time_ms(F&& fn) {
  double best = 1e30;
  for (int rep = 0; rep < 3; ++rep) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-22s %10.2f ms %10.2f ms %8.2fx\n", name, serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = 20000;
  if (argc > 1) n = static_cast<std::size_t>(std::strtoull(argv[1], nullptr, 10));

  auto texts = synth_texts(n, 7);
  std::printf("%zu synthetic samples\n", n);
  std::printf("%-22s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  std::vector<SampleBreakdown> out_a, out_b;
  double s_stats = time_ms([&] { out_a = analyze_samples_serial(texts, kEn); });
  double p_stats = time_ms([&] { out_b = analyze_samples(texts, kEn); });
  row("analyze_samples", s_stats, p_stats);
  for (std::size_t i = 0; i < n; ++i)
    if (out_a[i].word_tokens != out_b[i].word_tokens) {
      std::fprintf(stderr, "twin mismatch at %zu\n", i);
      return 1;
    }

  std::vector<SparseVector> emb_a, emb_b;
  double s_emb = time_ms([&] { emb_a = embed_all_serial(texts, kEn); });
  double p_emb = time_ms([&] { emb_b = embed_all(texts, kEn); });
  row("embed_all", s_emb, p_emb);
  for (std::size_t i = 0; i < n; ++i)
    if (emb_a[i].entries != emb_b[i].entries) {
      std::fprintf(stderr, "twin mismatch at %zu\n", i);
      return 1;
    }

  std::size_t side = std::min<std::size_t>(n / 2, 4000);
  std::vector<SparseVector> left(emb_a.begin(), emb_a.begin() + side);
  std::vector<SparseVector> right(emb_a.begin() + side, emb_a.begin() + 2 * side);
  std::vector<std::size_t> left_len(side), right_len(side);
  for (std::size_t i = 0; i < side; ++i) {
    left_len[i] = 10 + i % 17;
    right_len[i] = 10 + (i * 3) % 17;
  }
  MatchConstraint constraint = MatchConstraint::defaults(LangPair::of(kDe, kEn));
  std::vector<CandidateEdge> cand_a, cand_b;
  double s_cand = time_ms(
      [&] { cand_a = generate_candidates_serial(left, left_len, right, right_len, constraint); });
  double p_cand =
      time_ms([&] { cand_b = generate_candidates(left, left_len, right, right_len, constraint); });
  row("generate_candidates", s_cand, p_cand);
  if (cand_a.size() != cand_b.size()) {
    std::fprintf(stderr, "twin mismatch: %zu vs %zu edges\n", cand_a.size(), cand_b.size());
    return 1;
  }
  std::printf("%zu candidate edges\n", cand_a.size());
  return 0;
}
