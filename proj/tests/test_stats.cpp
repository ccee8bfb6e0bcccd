#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "causalmt/rng.hpp"
#include "causalmt/stats.hpp"
#include "causalmt/types.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace causalmt;
using testutil::make_pair;

namespace {

const Direction kDeEn = Direction::make(kDe, kEn);

DirectedCorpus one_side_corpus(const std::vector<std::string>& en_texts) {
  DirectedCorpus c;
  c.direction = kDeEn;
  c.lang_pair = LangPair::of(kDe, kEn);
  for (std::size_t i = 0; i < en_texts.size(); ++i)
    c.pairs.push_back(make_pair("p" + std::to_string(i), "Platzhalter.", en_texts[i], kDeEn));
  return c;
}

}  // namespace

TEST_CASE("syllable counting follows the vowel-group rule") {
  CHECK(count_syllables("cat", kEn) == 1);
  CHECK(count_syllables("table", kEn) == 2);   // final -le keeps its syllable
  CHECK(count_syllables("make", kEn) == 1);    // silent final e
  CHECK(count_syllables("made", kEn) == 1);
  CHECK(count_syllables("syllable", kEn) == 3);
  CHECK(count_syllables("queue", kEn) == 1);
  CHECK(count_syllables("rhythm", kEn) == 1);  // y as vowel
  CHECK(count_syllables("bcd", kEn) == 1);     // floor of one
  CHECK(count_syllables("The", kEn) == 1);     // case-insensitive
}

TEST_CASE("syllable counting knows language-specific vowels") {
  CHECK(count_syllables("über", kDe) == 2);
  CHECK(count_syllables("spröde", kDe) == 2);
  CHECK(count_syllables("está", kEs) == 2);
  CHECK(count_syllables("été", kFr) == 2);
  CHECK_THROWS_AS(count_syllables("tak", LanguageCode::parse("pl")), Error);
}

TEST_CASE("flesch reading ease on a known sentence") {
  auto c = one_side_corpus({"The cat sat on the mat."});
  auto p = complexity_profile(c, kEn);
  // 6 words, 1 sentence, 6 syllables
  CHECK(p.syllables_per_word == doctest::Approx(1.0));
  CHECK(p.flesch_reading_ease == doctest::Approx(116.145));
}

TEST_CASE("mattr uses a sliding 500-token window") {
  // 1000 copies of one token: every window holds one type
  std::string text;
  for (int i = 0; i < 1000; ++i) text += "tok ";
  auto c = one_side_corpus({text});
  auto p = complexity_profile(c, kEn);
  CHECK(p.mattr == doctest::Approx(0.002));
}

TEST_CASE("mattr falls back to plain type-token ratio under 500 tokens") {
  auto c = one_side_corpus({"alpha beta alpha gamma"});
  auto p = complexity_profile(c, kEn);
  CHECK(p.mattr == doctest::Approx(3.0 / 4.0));
}

TEST_CASE("lexical density counts non-stopword tokens") {
  // "the" and "on" are stopwords; "report", "arrived", "time" are content
  auto c = one_side_corpus({"The report arrived on time"});
  auto p = complexity_profile(c, kEn);
  CHECK(p.lexical_density == doctest::Approx(3.0 / 5.0));
}

TEST_CASE("passive detection on the calibration sentences") {
  const std::vector<std::string> passives = {
      "The ball was thrown by John.", "The house is being built by workers.",
      "The cake was eaten.", "Results were analyzed carefully.", "Mistakes were made."};
  const std::vector<std::string> actives = {
      "John threw the ball.", "She has finished the report.", "He was happy.",
      "We are going to the market.", "The committee is examining the proposal."};
  for (const auto& s : passives) CHECK_MESSAGE(is_passive_sentence(s), s);
  for (const auto& s : actives) CHECK_MESSAGE(!is_passive_sentence(s), s);

  std::vector<std::string> all = passives;
  all.insert(all.end(), actives.begin(), actives.end());
  CHECK(passive_pct(one_side_corpus(all)) == doctest::Approx(0.5));
}

TEST_CASE("passive share needs an english side") {
  DirectedCorpus c;
  c.direction = Direction::make(kDe, kFr);
  c.lang_pair = LangPair::of(kDe, kFr);
  DirectedPair p;
  p.id = "x";
  p.text[kDe] = "Text.";
  p.text[kFr] = "Texte.";
  p.direction = c.direction;
  c.pairs.push_back(p);
  CHECK_THROWS_AS(passive_pct(c), Error);
}

TEST_CASE("sample analysis separates words, punctuation, and sentences") {
  auto b = analyze_sample("The vote, please. Thank you!", kEn);
  CHECK(b.word_tokens == 5);
  CHECK(b.punct_tokens == 3);
  CHECK(b.sentences == 2);
  CHECK_FALSE(b.passive);

  auto p = analyze_sample("The report was adopted.", kEn);
  CHECK(p.passive);
}

TEST_CASE("side statistics aggregate per-sample means and vocabulary") {
  auto c = one_side_corpus({"The report was adopted.", "The vote was rejected."});
  auto s = side_stats(c, kEn);
  CHECK(s.lang == kEn);
  CHECK(s.n_samples == 2);
  CHECK(s.words_per_sample == doctest::Approx(4.0));
  CHECK(s.sents_per_sample == doctest::Approx(1.0));
  CHECK(s.punct_per_sample == doctest::Approx(1.0));
  CHECK(s.vocab_size == 6);  // The report was adopted vote rejected
  REQUIRE(s.passive_pct.has_value());
  CHECK(*s.passive_pct == doctest::Approx(1.0));

  auto de = side_stats(c, kDe);
  CHECK_FALSE(de.passive_pct.has_value());
}

TEST_CASE("statistics reject foreign languages and empty corpora") {
  auto c = one_side_corpus({"Text here."});
  CHECK_THROWS_AS(side_stats(c, kFr), Error);
  DirectedCorpus empty;
  empty.direction = kDeEn;
  empty.lang_pair = LangPair::of(kDe, kEn);
  CHECK_THROWS_AS(side_stats(empty, kEn), Error);
}

TEST_CASE("expansion factor is the ratio of mean word counts") {
  CHECK(expansion_factor_from_means(25.5, 22.4) == 25.5 / 22.4);
  CHECK(std::round(expansion_factor_from_means(25.5, 22.4) * 1e4) / 1e4 == 1.1384);
  CHECK_THROWS_AS(expansion_factor_from_means(0.0, 1.0), Error);
  CHECK_THROWS_AS(expansion_factor_from_means(1.0, 0.0), Error);
}

TEST_CASE("both expansion orientations come from the same means") {
  // each orientation must be exactly the rounded division of the two means;
  // the product then sits within a couple of ulp of one
  SplitMix64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    double a = 1.0 + static_cast<double>(rng.below(4000)) / 100.0;
    double b = 1.0 + static_cast<double>(rng.below(4000)) / 100.0;
    double fwd = expansion_factor_from_means(a, b);
    double rev = expansion_factor_from_means(b, a);
    CHECK(fwd == a / b);
    CHECK(rev == b / a);
    CHECK(std::abs(fwd * rev - 1.0) <= 4 * std::numeric_limits<double>::epsilon());
  }
}

TEST_CASE("corpus expansion factor on a concrete corpus") {
  DirectedCorpus c;
  c.direction = kDeEn;
  c.lang_pair = LangPair::of(kDe, kEn);
  // de side: 2 and 4 words; en side: 3 and 6 words
  c.pairs.push_back(make_pair("a", "Zwei Worte", "three words here", kDeEn));
  c.pairs.push_back(make_pair("b", "Vier Worte sind hier", "six words are in this text", kDeEn));
  double en_over_de = expansion_factor(c, kEn, kDe);
  CHECK(en_over_de == doctest::Approx(4.5 / 3.0));
  CHECK(expansion_factor(c, kDe, kEn) == doctest::Approx(3.0 / 4.5));
  CHECK(expansion_factor(c, kDe, kDe) == 1.0);

  auto cs = corpus_stats(c);
  CHECK(cs.expansion.numerator == kEn);  // pair-canonical: second over first
  CHECK(cs.expansion.denominator == kDe);
  CHECK(cs.expansion.value == doctest::Approx(4.5 / 3.0));
  CHECK(cs.side.at(kEn).words_per_sample == doctest::Approx(4.5));
  CHECK(cs.side.at(kDe).words_per_sample == doctest::Approx(3.0));
}

TEST_CASE("parallel and serial sample analysis agree") {
  std::vector<std::string> texts;
  for (int i = 0; i < 300; ++i)
    texts.push_back("Sentence number " + std::to_string(i) + " was written. It is short.");
  auto serial = analyze_samples_serial(texts, kEn);
  auto parallel = analyze_samples(texts, kEn);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].word_tokens == parallel[i].word_tokens);
    CHECK(serial[i].punct_tokens == parallel[i].punct_tokens);
    CHECK(serial[i].sentences == parallel[i].sentences);
    CHECK(serial[i].syllables == parallel[i].syllables);
    CHECK(serial[i].passive == parallel[i].passive);
  }
}
