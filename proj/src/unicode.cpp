#include "causalmt/unicode.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "causalmt/types.hpp"

namespace causalmt::uni {

std::string nfc(std::string_view utf8) {
  UErrorCode ec = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(ec);
  if (U_FAILURE(ec)) throw Error("ICU NFC instance unavailable");
  icu::UnicodeString in = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  icu::UnicodeString out = n->normalize(in, ec);
  if (U_FAILURE(ec)) throw Error("NFC normalization failed");
  std::string result;
  out.toUTF8String(result);
  return result;
}

bool is_space(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)); }

bool is_punct(char32_t c) {
  switch (u_charType(static_cast<UChar32>(c))) {
    case U_DASH_PUNCTUATION:
    case U_START_PUNCTUATION:
    case U_END_PUNCTUATION:
    case U_CONNECTOR_PUNCTUATION:
    case U_OTHER_PUNCTUATION:
    case U_INITIAL_PUNCTUATION:
    case U_FINAL_PUNCTUATION:
      return true;
    default:
      return false;
  }
}

bool is_upper(char32_t c) { return u_isupper(static_cast<UChar32>(c)); }

char32_t to_lower(char32_t c) {
  return static_cast<char32_t>(u_tolower(static_cast<UChar32>(c)));
}

std::string lower(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  std::size_t i = 0;
  while (i < utf8.size()) encode(to_lower(decode(utf8, i)), out);
  return out;
}

char32_t decode(std::string_view s, std::size_t& i) {
  int32_t off = static_cast<int32_t>(i);
  int32_t len = static_cast<int32_t>(s.size());
  UChar32 c;
  U8_NEXT(reinterpret_cast<const uint8_t*>(s.data()), off, len, c);
  i = static_cast<std::size_t>(off);
  if (c < 0) return 0xFFFD;
  return static_cast<char32_t>(c);
}

void encode(char32_t c, std::string& out) {
  uint8_t buf[4];
  int32_t off = 0;
  UBool err = false;
  U8_APPEND(buf, off, 4, static_cast<UChar32>(c), err);
  if (err) {
    out += "\xEF\xBF\xBD";
    return;
  }
  out.append(reinterpret_cast<char*>(buf), static_cast<std::size_t>(off));
}

}  // namespace causalmt::uni
