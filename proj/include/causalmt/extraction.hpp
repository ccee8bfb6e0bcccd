#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "causalmt/types.hpp"

namespace causalmt {

enum class OriginLabel { original, translated, unknown };

struct Utterance {
  std::string transcript_id;
  std::size_t position = 0;
  std::optional<LanguageCode> speaker_lang;  // absent when untagged
  std::string text;
  LanguageCode doc_lang;
};

struct TranscriptParse {
  std::vector<Utterance> utterances;
  std::vector<std::string> warnings;
};

// Parses session transcripts: <CHAPTER ID="..."> lines delimit transcripts,
// <SPEAKER ID="..." LANGUAGE="XX" ...> blocks own the paragraph lines that
// follow them. One utterance per speaker block, in document order.
// Malformed markup raises an error naming the byte offset; an invalid
// LANGUAGE value keeps the utterance untagged and records a warning.
TranscriptParse parse_transcript(std::string_view raw, LanguageCode doc_lang);

// original  iff the speaker tag equals the document language,
// translated iff a tag is present and differs, unknown otherwise.
OriginLabel label_origin(const Utterance& u);

struct ExtractionResult {
  DirectedCorpus x_to_y;  // origin = x side's document language
  DirectedCorpus y_to_x;
  std::size_t discarded = 0;
  std::map<std::string, std::size_t> discard_reasons;
};

// Pairs two positionally aligned utterance streams and routes each pair by
// origin label: x-original/y-translated pairs go to x->y, the mirror case
// to y->x. Pairs with unknown labels, agreeing labels on both sides, or a
// third-language origin are discarded and counted.
ExtractionResult build_directed_corpora(const std::vector<Utterance>& side_x,
                                        const std::vector<Utterance>& side_y);

}  // namespace causalmt
