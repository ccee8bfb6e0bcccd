#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "causalmt/types.hpp"

namespace causalmt {

// Collapses Unicode whitespace runs to single ASCII spaces and trims.
std::string normalize_ws(std::string_view text);

// Splits on Unicode whitespace, then separates maximal punctuation runs
// (general category P*) from word characters. Case is preserved.
// "Hello, world!" -> ["Hello", ",", "world", "!"]
TokenList tokenize(std::string_view text, LanguageCode lang);

// True for tokens that are not pure punctuation runs.
bool is_word_token(std::string_view token);

// Sentence boundaries after [.?!…] runs followed by whitespace and an
// uppercase letter or opening quote; a per-language abbreviation list
// suppresses boundaries after e.g. "Dr." or "z.B.".
// Joining the result with single spaces equals normalize_ws(text).
std::vector<std::string> split_sentences(std::string_view text, LanguageCode lang);

}  // namespace causalmt
