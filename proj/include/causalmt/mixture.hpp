#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "causalmt/types.hpp"

namespace causalmt {

struct MixtureSpec {
  int alpha = 0;  // percent of aligned-direction pairs, 0..100
  std::size_t total_size = 0;
  std::uint64_t seed = 0;

  bool operator==(const MixtureSpec&) const = default;
};

// A training set mixing both directions of one language pair. Every pair
// keeps its own direction label, so the file header carries no direction.
struct MixedCorpus {
  LangPair lang_pair;
  std::optional<MixtureSpec> spec;
  std::vector<DirectedPair> pairs;

  bool operator==(const MixedCorpus&) const = default;
};

// Round-half-up share of total awarded to the aligned direction.
std::size_t aligned_quota(int alpha, std::size_t total);

MixedCorpus make_mixture(const DirectedCorpus& aligned, const DirectedCorpus& unaligned,
                         const MixtureSpec& spec);

struct SslSplit {
  DirectedCorpus a_half1, a_half2;
  DirectedCorpus b_half1, b_half2;
};

// Seeded pair-level partition of each corpus; half1 gets the extra pair on
// odd sizes and feeds the supervised equal mix, half2 the monolingual side.
SslSplit halve_for_ssl(const DirectedCorpus& a, const DirectedCorpus& b, std::uint64_t seed);

struct MonoRecord {
  std::string id;
  std::string text;
  Direction direction;  // of the pair the text was projected from

  bool operator==(const MonoRecord&) const = default;
};

std::vector<MonoRecord> extract_monolingual(const DirectedCorpus& half, LanguageCode lang);

enum class PseudoMethod { self_training, back_translation };

std::string pseudo_method_name(PseudoMethod m);
PseudoMethod parse_pseudo_method(std::string_view name);

struct PseudoPair {
  std::string id;
  std::map<LanguageCode, std::string> text;
  LanguageCode human_side;    // original monolingual text
  LanguageCode machine_side;  // machine-translated text
  PseudoMethod method = PseudoMethod::self_training;

  bool operator==(const PseudoPair&) const = default;
};

struct IdText {
  std::string id;
  std::string text;

  bool operator==(const IdText&) const = default;
};

// Pairs each monolingual record with its machine translation. Self-training
// consumes monolingual text in the task's source language, back-translation
// in the task's target language; violations are rejected up front.
std::vector<PseudoPair> build_pseudo_parallel(const std::vector<IdText>& mono,
                                              LanguageCode mono_lang,
                                              const std::vector<IdText>& translations,
                                              LanguageCode target_lang, PseudoMethod method,
                                              Direction task);

void write_mixture(const MixedCorpus& mix, std::ostream& out);
void write_mixture(const MixedCorpus& mix, const std::filesystem::path& path);
MixedCorpus read_mixture(std::istream& in, std::string_view source_name);
MixedCorpus read_mixture(const std::filesystem::path& path);

void write_monolingual(const std::vector<MonoRecord>& records,
                       const std::filesystem::path& text_path,
                       const std::filesystem::path& ids_path);
std::vector<MonoRecord> read_monolingual(const std::filesystem::path& text_path,
                                         const std::filesystem::path& ids_path);

void write_pseudo(const std::vector<PseudoPair>& pairs, std::ostream& out);
void write_pseudo(const std::vector<PseudoPair>& pairs, const std::filesystem::path& path);
std::vector<PseudoPair> read_pseudo(std::istream& in, std::string_view source_name);
std::vector<PseudoPair> read_pseudo(const std::filesystem::path& path);

}  // namespace causalmt
