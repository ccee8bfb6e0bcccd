#pragma once

#include <span>
#include <string_view>

#include "causalmt/types.hpp"

namespace causalmt::wordlists {

inline constexpr std::string_view kVersion = "causalmt-wordlists/1";

// Abbreviations that do not end a sentence ("Dr.", "z.B.", "p.ex.").
// Entries are stored without the trailing period, case-sensitive.
std::span<const std::string_view> abbreviations(LanguageCode lang);

// Function words used for lexical density.
std::span<const std::string_view> stopwords(LanguageCode lang);

// English irregular past participles that end in neither -ed nor -en.
std::span<const std::string_view> irregular_participles();

}  // namespace causalmt::wordlists
