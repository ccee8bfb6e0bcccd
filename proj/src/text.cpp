#include "causalmt/text.hpp"

#include "causalmt/unicode.hpp"
#include "causalmt/wordlists.hpp"

namespace causalmt {

std::string normalize_ws(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending = false;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t j = i;
    char32_t c = uni::decode(text, j);
    if (uni::is_space(c)) {
      pending = true;
    } else {
      if (pending && !out.empty()) out += ' ';
      pending = false;
      out.append(text.substr(i, j - i));
    }
    i = j;
  }
  return out;
}

TokenList tokenize(std::string_view text, LanguageCode) {
  TokenList out;
  std::size_t i = 0, start = 0;
  int cls = -1;  // -1 whitespace/none, 0 word, 1 punct
  auto flush = [&](std::size_t end) {
    if (cls > -1 && end > start) out.emplace_back(text.substr(start, end - start));
  };
  while (i < text.size()) {
    std::size_t j = i;
    char32_t c = uni::decode(text, j);
    int k = uni::is_space(c) ? -1 : (uni::is_punct(c) ? 1 : 0);
    if (k != cls) {
      flush(i);
      cls = k;
      start = i;
    }
    i = j;
  }
  flush(i);
  return out;
}

bool is_word_token(std::string_view token) {
  if (token.empty()) return false;
  std::size_t i = 0;
  return !uni::is_punct(uni::decode(token, i));
}

namespace {

bool is_terminal(char32_t c) {
  return c == U'.' || c == U'!' || c == U'?' || c == U'…';
}

bool is_opening_quote(char32_t c) {
  switch (c) {
    case U'"':
    case U'\'':
    case U'(':
    case U'[':
    case U'«':
    case U'¿':
    case U'¡':
    case U'‘':
    case U'‚':
    case U'“':
    case U'„':
    case U'‹':
      return true;
    default:
      return false;
  }
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text, LanguageCode lang) {
  std::string s = normalize_ws(text);
  std::vector<char32_t> cps;
  std::vector<std::size_t> offs;
  std::size_t i = 0;
  while (i < s.size()) {
    offs.push_back(i);
    cps.push_back(uni::decode(s, i));
  }
  offs.push_back(s.size());

  auto abbrevs = wordlists::abbreviations(lang);
  std::vector<std::string> out;
  std::size_t start = 0;
  const std::size_t n = cps.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (!is_terminal(cps[k])) continue;
    std::size_t last = k;
    while (last + 1 < n && is_terminal(cps[last + 1])) ++last;
    bool boundary = last + 2 < n && cps[last + 1] == U' ' &&
                    (uni::is_upper(cps[last + 2]) || is_opening_quote(cps[last + 2]));
    if (boundary && last == k && cps[k] == U'.') {
      std::size_t b = k;
      while (b > start && !uni::is_space(cps[b - 1])) --b;
      while (b < k && uni::is_punct(cps[b]) && cps[b] != U'.') ++b;
      std::string_view word = std::string_view(s).substr(offs[b], offs[k] - offs[b]);
      for (auto a : abbrevs) {
        if (word == a) {
          boundary = false;
          break;
        }
      }
    }
    if (boundary) {
      out.emplace_back(s.substr(offs[start], offs[last + 1] - offs[start]));
      start = last + 2;
      k = last + 1;
    } else {
      k = last;
    }
  }
  out.emplace_back(s.substr(offs[start]));
  return out;
}

}  // namespace causalmt
