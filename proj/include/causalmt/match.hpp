#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "causalmt/embed.hpp"
#include "causalmt/types.hpp"

namespace causalmt {

// Priority order en > de > fr > es; both pair members must rank.
LanguageCode choose_match_language(LangPair pair);

struct MatchConstraint {
  double max_len_ratio = 1.1;
  double min_cosine = 0.7;  // strict: a candidate needs cosine > min_cosine
  LanguageCode match_lang;
  std::size_t candidate_cap = 64;

  static MatchConstraint defaults(LangPair pair);
};

struct CandidateEdge {
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  double cosine = 0.0;
  double len_ratio = 0.0;

  bool operator==(const CandidateEdge&) const = default;
};

// Per left item: bucket right items by compatible token count, rank by
// cosine (ties by right index), truncate to candidate_cap, then apply the
// strict cosine threshold and the exact ratio check.
std::vector<CandidateEdge> generate_candidates_serial(const std::vector<SparseVector>& left,
                                                      const std::vector<std::size_t>& left_lens,
                                                      const std::vector<SparseVector>& right,
                                                      const std::vector<std::size_t>& right_lens,
                                                      const MatchConstraint& c);
std::vector<CandidateEdge> generate_candidates(const std::vector<SparseVector>& left,
                                               const std::vector<std::size_t>& left_lens,
                                               const std::vector<SparseVector>& right,
                                               const std::vector<std::size_t>& right_lens,
                                               const MatchConstraint& c);
std::vector<CandidateEdge> generate_candidates(const std::vector<std::vector<double>>& left,
                                               const std::vector<std::size_t>& left_lens,
                                               const std::vector<std::vector<double>>& right,
                                               const std::vector<std::size_t>& right_lens,
                                               const MatchConstraint& c);

// Maximum-cardinality bipartite matching via unit-capacity max flow
// (Dinic). Edges are processed in (left, right) order, so the result is
// deterministic; output is sorted by left index.
std::vector<std::pair<std::uint32_t, std::uint32_t>> maximum_matching(
    const std::vector<CandidateEdge>& edges, std::size_t n_left, std::size_t n_right);

// One pass over left items in index order, each taking its best unused
// candidate. Kept for comparison with the optimal matcher.
std::vector<std::pair<std::uint32_t, std::uint32_t>> greedy_matching(
    const std::vector<CandidateEdge>& edges, std::size_t n_left, std::size_t n_right);

struct MatchedPair {
  std::string causal_id;
  std::string anticausal_id;
  double cosine = 0.0;
  double len_ratio = 0.0;

  bool operator==(const MatchedPair&) const = default;
};

struct MatchSummary {
  std::size_t cardinality = 0;
  double mean_cosine = 0.0;
  double mean_len_ratio = 0.0;
};

struct MatchResult {
  std::vector<MatchedPair> pairs;
  DirectedCorpus matched_causal;
  DirectedCorpus matched_anticausal;
  MatchSummary summary;
};

struct MatchOptions {
  MatchConstraint constraint;
  bool greedy = false;
  // When set, vectors come from this table (keyed by pair id) instead of
  // the built-in embedder.
  const DenseEmbeddings* embeddings = nullptr;
};

MatchResult match_corpora(const DirectedCorpus& causal, const DirectedCorpus& anticausal,
                          const MatchOptions& opts);
MatchResult match_corpora(const DirectedCorpus& causal, const DirectedCorpus& anticausal);

void write_match_tsv(const MatchResult& result, std::ostream& out);
void write_match_tsv(const MatchResult& result, const std::filesystem::path& path);

}  // namespace causalmt
