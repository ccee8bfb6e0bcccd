#include "causalmt/stats.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "causalmt/parallel.hpp"
#include "causalmt/text.hpp"
#include "causalmt/unicode.hpp"
#include "causalmt/wordlists.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace causalmt {

namespace {

bool syllable_lang(LanguageCode lang) {
  return lang == kEn || lang == kDe || lang == kEs || lang == kFr;
}

bool is_vowel(char32_t c, LanguageCode lang) {
  switch (c) {
    case U'a': case U'e': case U'i': case U'o': case U'u': case U'y':
      return true;
    default:
      break;
  }
  if (lang == kDe) return c == U'ä' || c == U'ö' || c == U'ü';
  if (lang == kEs)
    return c == U'á' || c == U'é' || c == U'í' || c == U'ó' || c == U'ú' || c == U'ü';
  if (lang == kFr) {
    switch (c) {
      case U'à': case U'â': case U'é': case U'è': case U'ê': case U'ë':
      case U'î': case U'ï': case U'ô': case U'û': case U'ù': case U'ü': case U'ÿ':
        return true;
      default:
        return false;
    }
  }
  return false;
}

const std::unordered_set<std::string>& irregular_set() {
  static const std::unordered_set<std::string> set = [] {
    std::unordered_set<std::string> s;
    for (auto w : wordlists::irregular_participles()) s.insert(std::string(w));
    return s;
  }();
  return set;
}

bool is_be_form(const std::string& lowered) {
  return lowered == "am" || lowered == "is" || lowered == "are" || lowered == "was" ||
         lowered == "were" || lowered == "be" || lowered == "been" || lowered == "being";
}

bool is_participle(const std::string& lowered) {
  if (lowered.size() >= 3 && (lowered.ends_with("ed") || lowered.ends_with("en"))) return true;
  return irregular_set().count(lowered) > 0;
}

const std::unordered_set<std::string>& stopword_set(LanguageCode lang) {
  static std::map<LanguageCode, std::unordered_set<std::string>> cache;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(lang);
  if (it == cache.end()) {
    std::unordered_set<std::string> s;
    for (auto w : wordlists::stopwords(lang)) s.insert(std::string(w));
    it = cache.emplace(lang, std::move(s)).first;
  }
  return it->second;
}

std::vector<std::string> side_texts(const DirectedCorpus& corpus, LanguageCode lang) {
  if (!corpus.lang_pair.contains(lang))
    throw Error("language '" + lang.str() + "' is not part of corpus pair " +
                corpus.lang_pair.str());
  if (corpus.pairs.empty()) throw Error("cannot compute statistics of an empty corpus");
  std::vector<std::string> texts;
  texts.reserve(corpus.pairs.size());
  for (const auto& p : corpus.pairs) texts.push_back(p.text_for(lang));
  return texts;
}

}  // namespace

std::size_t count_syllables(std::string_view word, LanguageCode lang) {
  if (!syllable_lang(lang))
    throw Error("no syllable rules for language '" + lang.str() +
                "'; supported: en, de, es, fr");
  std::string low = uni::lower(word);
  std::vector<char32_t> cps;
  for (std::size_t i = 0; i < low.size();) cps.push_back(uni::decode(low, i));

  std::size_t groups = 0;
  bool in_group = false;
  for (char32_t c : cps) {
    bool v = is_vowel(c, lang);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  if (lang == kEn && groups > 1 && !cps.empty() && cps.back() == U'e') {
    bool ends_le = cps.size() >= 2 && cps[cps.size() - 2] == U'l';
    if (!ends_le) --groups;
  }
  return std::max<std::size_t>(groups, 1);
}

bool is_passive_sentence(const std::string& sentence) {
  TokenList tokens = tokenize(sentence, kEn);
  std::vector<std::string> words;
  for (const auto& t : tokens)
    if (is_word_token(t)) words.push_back(uni::lower(t));
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!is_be_form(words[i])) continue;
    for (std::size_t j = i + 1; j < words.size() && j <= i + 2; ++j)
      if (is_participle(words[j])) return true;
  }
  return false;
}

SampleBreakdown analyze_sample(const std::string& text, LanguageCode lang) {
  SampleBreakdown b;
  TokenList tokens = tokenize(text, lang);
  for (const auto& t : tokens) {
    if (is_word_token(t)) {
      ++b.word_tokens;
      if (syllable_lang(lang)) b.syllables += count_syllables(t, lang);
    } else {
      ++b.punct_tokens;
    }
  }
  auto sentences = split_sentences(text, lang);
  b.sentences = sentences.size();
  if (lang == kEn)
    for (const auto& s : sentences)
      if (is_passive_sentence(s)) {
        b.passive = true;
        break;
      }
  return b;
}

std::vector<SampleBreakdown> analyze_samples_serial(const std::vector<std::string>& texts,
                                                    LanguageCode lang) {
  std::vector<SampleBreakdown> out(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) out[i] = analyze_sample(texts[i], lang);
  return out;
}

std::vector<SampleBreakdown> analyze_samples(const std::vector<std::string>& texts,
                                             LanguageCode lang) {
  std::vector<SampleBreakdown> out(texts.size());
#ifdef _OPENMP
  int threads = effective_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(texts.size()); ++i)
    out[i] = analyze_sample(texts[i], lang);
  return out;
}

SideStats side_stats(const DirectedCorpus& corpus, LanguageCode lang) {
  std::vector<std::string> texts = side_texts(corpus, lang);
  std::vector<SampleBreakdown> breakdowns = analyze_samples(texts, lang);

  std::size_t words = 0, puncts = 0, sents = 0, passive = 0;
  for (const auto& b : breakdowns) {
    words += b.word_tokens;
    puncts += b.punct_tokens;
    sents += b.sentences;
    if (b.passive) ++passive;
  }

  std::vector<std::vector<std::string>> per_sample_vocab(texts.size());
#ifdef _OPENMP
  int threads = effective_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(texts.size()); ++i) {
    for (auto& t : tokenize(texts[i], lang))
      if (is_word_token(t)) per_sample_vocab[i].push_back(std::move(t));
  }
  std::unordered_set<std::string> vocab;
  for (auto& sample : per_sample_vocab)
    for (auto& t : sample) vocab.insert(std::move(t));

  SideStats s;
  s.lang = lang;
  s.n_samples = texts.size();
  double n = static_cast<double>(texts.size());
  s.words_per_sample = static_cast<double>(words) / n;
  s.sents_per_sample = static_cast<double>(sents) / n;
  s.punct_per_sample = static_cast<double>(puncts) / n;
  s.vocab_size = vocab.size();
  if (lang == kEn) s.passive_pct = static_cast<double>(passive) / n;
  return s;
}

CorpusStats corpus_stats(const DirectedCorpus& corpus) {
  CorpusStats cs;
  cs.direction = corpus.direction;
  SideStats a = side_stats(corpus, corpus.lang_pair.first);
  SideStats b = side_stats(corpus, corpus.lang_pair.second);
  cs.expansion.numerator = corpus.lang_pair.second;
  cs.expansion.denominator = corpus.lang_pair.first;
  cs.expansion.value = expansion_factor_from_means(b.words_per_sample, a.words_per_sample);
  cs.side.emplace(corpus.lang_pair.first, std::move(a));
  cs.side.emplace(corpus.lang_pair.second, std::move(b));
  return cs;
}

double expansion_factor(const DirectedCorpus& corpus, LanguageCode x, LanguageCode y) {
  if (x == y) return 1.0;
  double mx = side_stats(corpus, x).words_per_sample;
  double my = side_stats(corpus, y).words_per_sample;
  return expansion_factor_from_means(mx, my);
}

double expansion_factor_from_means(double mean_numerator, double mean_denominator) {
  if (!(mean_denominator > 0.0)) throw Error("expansion factor denominator must be positive");
  if (!(mean_numerator > 0.0)) throw Error("expansion factor numerator must be positive");
  return mean_numerator / mean_denominator;
}

double passive_pct(const DirectedCorpus& corpus) {
  if (!corpus.lang_pair.contains(kEn))
    throw Error("passive detection needs an English side; corpus pair is " +
                corpus.lang_pair.str());
  SideStats s = side_stats(corpus, kEn);
  return *s.passive_pct;
}

ComplexityProfile complexity_profile(const DirectedCorpus& corpus, LanguageCode lang) {
  if (!syllable_lang(lang))
    throw Error("no syllable rules for language '" + lang.str() +
                "'; supported: en, de, es, fr");
  std::vector<std::string> texts = side_texts(corpus, lang);
  std::vector<SampleBreakdown> breakdowns = analyze_samples(texts, lang);

  std::size_t words = 0, sents = 0, syllables = 0;
  for (const auto& b : breakdowns) {
    words += b.word_tokens;
    sents += b.sentences;
    syllables += b.syllables;
  }
  if (words == 0) throw Error("corpus side has no word tokens");

  // MATTR and density walk the corpus-level token stream in order.
  std::vector<std::vector<std::string>> per_sample_tokens(texts.size());
#ifdef _OPENMP
  int threads = effective_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(texts.size()); ++i) {
    for (auto& t : tokenize(texts[i], lang))
      if (is_word_token(t)) per_sample_tokens[i].push_back(std::move(t));
  }
  std::vector<std::string> stream;
  stream.reserve(words);
  for (auto& sample : per_sample_tokens)
    for (auto& t : sample) stream.push_back(std::move(t));

  constexpr std::size_t kWindow = 500;
  double mattr = 0.0;
  if (stream.size() < kWindow) {
    std::unordered_set<std::string> types(stream.begin(), stream.end());
    mattr = static_cast<double>(types.size()) / static_cast<double>(stream.size());
  } else {
    std::unordered_map<std::string, std::size_t> counts;
    std::size_t distinct = 0;
    double ttr_sum = 0.0;
    for (std::size_t i = 0; i < stream.size(); ++i) {
      if (++counts[stream[i]] == 1) ++distinct;
      if (i + 1 >= kWindow) {
        ttr_sum += static_cast<double>(distinct) / static_cast<double>(kWindow);
        const std::string& out = stream[i + 1 - kWindow];
        if (--counts[out] == 0) {
          counts.erase(out);
          --distinct;
        }
      }
    }
    mattr = ttr_sum / static_cast<double>(stream.size() - kWindow + 1);
  }

  const auto& stop = stopword_set(lang);
  std::size_t content = 0;
  for (const auto& t : stream)
    if (!stop.count(uni::lower(t))) ++content;

  ComplexityProfile p;
  p.syllables_per_word = static_cast<double>(syllables) / static_cast<double>(words);
  p.flesch_reading_ease = 206.835 -
                          1.015 * (static_cast<double>(words) / static_cast<double>(sents)) -
                          84.6 * p.syllables_per_word;
  p.mattr = mattr;
  p.lexical_density = static_cast<double>(content) / static_cast<double>(words);
  return p;
}

}  // namespace causalmt
