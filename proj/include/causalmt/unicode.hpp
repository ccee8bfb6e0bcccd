#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace causalmt::uni {

// Canonical composition (NFC). All ingested text goes through this once at
// load time so dedup keys and downstream token streams agree on byte form.
std::string nfc(std::string_view utf8);

bool is_space(char32_t c);
// Unicode general category P* (connector/dash/open/close/initial/final/other).
bool is_punct(char32_t c);
bool is_upper(char32_t c);
char32_t to_lower(char32_t c);
std::string lower(std::string_view utf8);

// Decodes the code point at byte offset i and advances i past it.
// Invalid sequences yield U+FFFD and advance by one byte.
char32_t decode(std::string_view s, std::size_t& i);
void encode(char32_t c, std::string& out);

}  // namespace causalmt::uni
