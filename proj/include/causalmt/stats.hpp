#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "causalmt/types.hpp"

namespace causalmt {

// Per-sample counts feeding every aggregate. Computed once per text so the
// serial and parallel paths share one fold.
struct SampleBreakdown {
  std::size_t word_tokens = 0;
  std::size_t punct_tokens = 0;
  std::size_t sentences = 0;
  std::size_t syllables = 0;
  bool passive = false;

  bool operator==(const SampleBreakdown&) const = default;
};

struct SideStats {
  LanguageCode lang;
  std::size_t n_samples = 0;
  double words_per_sample = 0.0;   // word tokens only, punctuation runs excluded
  double sents_per_sample = 0.0;
  std::size_t vocab_size = 0;      // distinct word tokens, case-sensitive
  double punct_per_sample = 0.0;
  std::optional<double> passive_pct;  // present iff lang is "en"

  bool operator==(const SideStats&) const = default;
};

struct ExpansionFactor {
  LanguageCode numerator;
  LanguageCode denominator;
  double value = 0.0;

  bool operator==(const ExpansionFactor&) const = default;
};

struct CorpusStats {
  Direction direction;
  std::map<LanguageCode, SideStats> side;
  // Canonical orientation: the alphabetically later language on top.
  ExpansionFactor expansion;
};

struct ComplexityProfile {
  double syllables_per_word = 0.0;
  double flesch_reading_ease = 0.0;
  double mattr = 0.0;            // moving-average type-token ratio, window 500
  double lexical_density = 0.0;  // word tokens outside the stopword list / word tokens

  bool operator==(const ComplexityProfile&) const = default;
};

// Vowel-group counting; English suppresses a trailing silent 'e' except in
// final "le". Throws for languages without syllable rules (supported: en,
// de, es, fr).
std::size_t count_syllables(std::string_view word, LanguageCode lang);

// Lexical heuristic: a be-form followed within two word tokens by a token
// ending in "ed"/"en" or found in the irregular-participle list.
bool is_passive_sentence(const std::string& sentence);

SampleBreakdown analyze_sample(const std::string& text, LanguageCode lang);
std::vector<SampleBreakdown> analyze_samples_serial(const std::vector<std::string>& texts,
                                                    LanguageCode lang);
// Parallel twin of analyze_samples_serial; output is element-identical.
std::vector<SampleBreakdown> analyze_samples(const std::vector<std::string>& texts,
                                             LanguageCode lang);

SideStats side_stats(const DirectedCorpus& corpus, LanguageCode lang);
CorpusStats corpus_stats(const DirectedCorpus& corpus);

// Mean word tokens per sample in x divided by the same mean in y.
double expansion_factor(const DirectedCorpus& corpus, LanguageCode x, LanguageCode y);
double expansion_factor_from_means(double mean_numerator, double mean_denominator);

// Fraction of samples whose English side contains a passive sentence.
double passive_pct(const DirectedCorpus& corpus);

ComplexityProfile complexity_profile(const DirectedCorpus& corpus, LanguageCode lang);

}  // namespace causalmt
